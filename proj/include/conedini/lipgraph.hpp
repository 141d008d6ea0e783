#pragma once

#include "conedini/geometry.hpp"
#include "conedini/measure.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace conedini {

/// Anchor points that lie on the graph of one Lipschitz function V -> V^perp.
struct LipGraphPatch {
  Subspace subspace;
  double alpha = 1.0;
  std::vector<Point> anchors;
  /// Euclidean Lipschitz bound of the extension built by `extend`.
  double audited_constant = 0.0;
};

struct ConeConditionResult {
  bool holds = true;
  /// First violating pair (i < j) in lexicographic order.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
};

/// All-pairs check that no point of E lies in the open cone X_x(V, alpha) of
/// another, i.e. dist(y - x, V) <= alpha dist(y - x, V^perp). alpha = 0 asks
/// for identical V^perp coordinates.
ConeConditionResult verify_cone_condition(const std::vector<Point>& points, const Subspace& v, double alpha,
                                          bool parallel = true);

/// Per-component McShane extension f_j(v) = min_i (y_ij + alpha |v - v_i|).
class LipschitzExtension {
 public:
  LipschitzExtension(Subspace v, double alpha, std::vector<Point> base, std::vector<Point> values);

  /// f(v) for V-coordinates v (length m); returns V^perp coordinates.
  Point operator()(std::span<const double> v) const;
  /// The point (v, f(v)) in R^n.
  Point lift(std::span<const double> v) const;
  double component_constant() const { return alpha_; }
  /// alpha sqrt(n - m).
  double euclidean_constant() const;
  const Subspace& subspace() const { return v_; }

 private:
  Subspace v_;
  double alpha_;
  std::vector<Point> base_;
  std::vector<Point> values_;
};

/// Throws InputError naming the violating pair when the anchors fail the cone condition.
LipschitzExtension extend(const LipGraphPatch& patch);

/// Packages anchors as a patch after verifying the cone condition.
LipGraphPatch make_patch(const Subspace& v, double alpha, std::vector<Point> anchors);

/// Procedural Lipschitz map V -> V^perp: each output component is
/// c_j + s v_1 + sum_t a_jt sin(w_jt . v + phi_jt).
class SineField {
 public:
  struct Term {
    double amplitude;
    Point frequency;
    double phase;
  };

  SineField(std::size_t m, std::vector<double> offsets, std::vector<std::vector<Term>> components);

  /// Random field whose certified constant equals `lipschitz` (0 gives a constant map).
  static SineField random(std::size_t m, std::size_t codim, double lipschitz, std::uint64_t seed,
                          std::size_t terms = 3, double offset = 0.0);
  /// f(v) = slope * (v_1, ..., v_1) + offset, certified constant |slope| sqrt(codim).
  static SineField linear(std::size_t m, std::size_t codim, double slope, double offset = 0.0);

  std::size_t domain_dim() const { return m_; }
  std::size_t codim() const { return offsets_.size(); }
  Point operator()(std::span<const double> v) const;
  /// sqrt(sum_j (sum_t |a_jt| |w_jt|)^2) >= Lipschitz constant.
  double certified_constant() const;

 private:
  std::size_t m_;
  std::vector<double> offsets_;
  std::vector<std::vector<Term>> components_;
  double linear_slope_ = 0.0;
};

/// Largest ratio |f(a) - f(b)| / |a - b| found on a dense grid of the box plus
/// random close pairs.
double audit_lipschitz(const SineField& f, const Box& domain, std::uint64_t seed, std::size_t samples = 4000);

/// N atoms (v_i, f(v_i)) with v_i uniform in `domain` (V-coordinates), labeled
/// "graph". Rejects f whose certified or audited constant exceeds alpha_f.
AtomicMeasure sample_graph(const Subspace& v, double alpha_f, const SineField& f, std::size_t count,
                           const Box& domain, std::uint64_t seed, int depth = 8, double weight = 1.0,
                           const std::string& label = "graph");

}  // namespace conedini
