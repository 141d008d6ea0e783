#include "conedini/lipgraph.hpp"

#include "conedini/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace conedini {

ConeConditionResult verify_cone_condition(const std::vector<Point>& points, const Subspace& v, double alpha,
                                          bool parallel) {
  for (const auto& p : points)
    if (p.size() != v.ambient_dim()) throw InputError("verify_cone_condition: dimension mismatch");
  if (alpha < 0.0) throw InputError("verify_cone_condition: alpha must be nonnegative");

  ConeConditionResult res;
  if (alpha == 0.0) {
    // Degenerate cone R^n \ V: only translates along V are allowed.
    for (std::size_t i = 0; i < points.size() && res.holds; ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        Point d(points[i].size());
        for (std::size_t c = 0; c < d.size(); ++c) d[c] = points[j][c] - points[i][c];
        if (v.dist_to(d) > 0.0) {
          res.holds = false;
          res.violation = std::make_pair(i, j);
          break;
        }
      }
    }
    return res;
  }

  const Cone cone(v, alpha);
  res.violation = parallel ? kernels::first_cone_violation_omp(points, cone)
                           : kernels::first_cone_violation_serial(points, cone);
  res.holds = !res.violation.has_value();
  return res;
}

// ---------------------------------------------------------------------------

LipschitzExtension::LipschitzExtension(Subspace v, double alpha, std::vector<Point> base, std::vector<Point> values)
    : v_(std::move(v)), alpha_(alpha), base_(std::move(base)), values_(std::move(values)) {
  if (base_.empty()) throw InputError("extend: no anchors");
}

Point LipschitzExtension::operator()(std::span<const double> v) const {
  if (v.size() != v_.dim()) throw InputError("extension: expected V-coordinates");
  // Exact reproduction at anchors, independent of rounding in the min below.
  for (std::size_t i = 0; i < base_.size(); ++i)
    if (std::equal(v.begin(), v.end(), base_[i].begin())) return values_[i];

  const std::size_t codim = values_.front().size();
  Point out(codim, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < base_.size(); ++i) {
    const double reach = alpha_ * distance(v, base_[i]);
    for (std::size_t j = 0; j < codim; ++j) out[j] = std::min(out[j], values_[i][j] + reach);
  }
  return out;
}

Point LipschitzExtension::lift(std::span<const double> v) const { return v_.compose(v, (*this)(v)); }

double LipschitzExtension::euclidean_constant() const {
  return alpha_ * std::sqrt(static_cast<double>(v_.ambient_dim() - v_.dim()));
}

LipschitzExtension extend(const LipGraphPatch& patch) {
  const auto check = verify_cone_condition(patch.anchors, patch.subspace, patch.alpha);
  if (!check.holds) {
    throw InputError("extend: anchors " + std::to_string(check.violation->first) + " and " +
                     std::to_string(check.violation->second) + " violate the cone condition");
  }
  std::vector<Point> base;
  std::vector<Point> values;
  for (const auto& a : patch.anchors) {
    base.push_back(patch.subspace.coords(a));
    values.push_back(patch.subspace.complement_coords(a));
  }
  return LipschitzExtension(patch.subspace, patch.alpha, std::move(base), std::move(values));
}

LipGraphPatch make_patch(const Subspace& v, double alpha, std::vector<Point> anchors) {
  const auto check = verify_cone_condition(anchors, v, alpha);
  if (!check.holds) {
    throw ContractViolation("patch anchors " + std::to_string(check.violation->first) + " and " +
                            std::to_string(check.violation->second) + " violate the cone condition");
  }
  const double audited = alpha * std::sqrt(static_cast<double>(v.ambient_dim() - v.dim()));
  return LipGraphPatch{v, alpha, std::move(anchors), audited};
}

// ---------------------------------------------------------------------------

SineField::SineField(std::size_t m, std::vector<double> offsets, std::vector<std::vector<Term>> components)
    : m_(m), offsets_(std::move(offsets)), components_(std::move(components)) {
  if (components_.size() != offsets_.size()) throw InputError("sine field: offsets/components mismatch");
  for (const auto& comp : components_)
    for (const auto& t : comp)
      if (t.frequency.size() != m_) throw InputError("sine field: frequency dimension mismatch");
}

SineField SineField::random(std::size_t m, std::size_t codim, double lipschitz, std::uint64_t seed,
                            std::size_t terms, double offset) {
  if (lipschitz < 0.0) throw InputError("sine field: negative Lipschitz constant");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> speed(1.0, 6.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  std::vector<std::vector<Term>> comps(codim);
  for (auto& comp : comps) {
    for (std::size_t t = 0; t < terms; ++t) {
      Point w(m);
      for (auto& c : w) c = unit(rng);
      const double len = norm(w);
      const double target = speed(rng);
      for (auto& c : w) c = len > 0.0 ? c * target / len : target;
      comp.push_back({unit(rng), std::move(w), angle(rng)});
    }
  }
  SineField f(m, std::vector<double>(codim, offset), comps);
  const double raw = f.certified_constant();
  const double scale = raw > 0.0 ? lipschitz / raw * (1.0 - 1e-12) : 0.0;
  for (auto& comp : f.components_)
    for (auto& t : comp) t.amplitude *= scale;
  return f;
}

SineField SineField::linear(std::size_t m, std::size_t codim, double slope, double offset) {
  SineField f(m, std::vector<double>(codim, offset), std::vector<std::vector<Term>>(codim));
  f.linear_slope_ = slope;
  return f;
}

Point SineField::operator()(std::span<const double> v) const {
  if (v.size() != m_) throw InputError("sine field: expected V-coordinates");
  Point out(offsets_.size());
  for (std::size_t j = 0; j < offsets_.size(); ++j) {
    double s = offsets_[j] + linear_slope_ * v[0];
    for (const auto& t : components_[j]) {
      double arg = t.phase;
      for (std::size_t i = 0; i < m_; ++i) arg += t.frequency[i] * v[i];
      s += t.amplitude * std::sin(arg);
    }
    out[j] = s;
  }
  return out;
}

double SineField::certified_constant() const {
  double sq = 0.0;
  for (const auto& comp : components_) {
    double l = std::abs(linear_slope_);
    for (const auto& t : comp) l += std::abs(t.amplitude) * norm(t.frequency);
    sq += l * l;
  }
  return std::sqrt(sq);
}

double audit_lipschitz(const SineField& f, const Box& domain, std::uint64_t seed, std::size_t samples) {
  const std::size_t m = f.domain_dim();
  if (domain.dim() != m) throw InputError("audit: domain dimension mismatch");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto random_point = [&] {
    Point p(m);
    for (std::size_t i = 0; i < m; ++i) p[i] = domain.lo[i] + u01(rng) * (domain.hi[i] - domain.lo[i]);
    return p;
  };
  auto ratio = [&](const Point& a, const Point& b) {
    const double d = distance(a, b);
    return d > 0.0 ? distance(f(a), f(b)) / d : 0.0;
  };

  double worst = 0.0;
  // Dense grid along every axis through the domain center.
  const Point mid = domain.center();
  for (std::size_t axis = 0; axis < m; ++axis) {
    Point prev = mid;
    prev[axis] = domain.lo[axis];
    for (std::size_t g = 1; g <= samples; ++g) {
      Point cur = mid;
      cur[axis] = domain.lo[axis] + (domain.hi[axis] - domain.lo[axis]) * static_cast<double>(g) /
                                        static_cast<double>(samples);
      worst = std::max(worst, ratio(prev, cur));
      prev = std::move(cur);
    }
  }
  const double scale = norm(Point(domain.hi.begin(), domain.hi.end())) + 1.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Point a = random_point();
    Point b = a;
    for (auto& c : b) c += (u01(rng) - 0.5) * 1e-3 * scale;
    worst = std::max(worst, ratio(a, b));
    worst = std::max(worst, ratio(a, random_point()));
  }
  return worst;
}

AtomicMeasure sample_graph(const Subspace& v, double alpha_f, const SineField& f, std::size_t count,
                           const Box& domain, std::uint64_t seed, int depth, double weight,
                           const std::string& label) {
  if (f.domain_dim() != v.dim() || f.codim() != v.ambient_dim() - v.dim()) {
    throw InputError("sample_graph: field does not map V to V^perp");
  }
  if (f.certified_constant() > alpha_f) {
    throw InputError("sample_graph: certified Lipschitz constant exceeds alpha_f");
  }
  if (audit_lipschitz(f, domain, seed ^ 0x9e3779b97f4a7c15ULL) > alpha_f * (1.0 + 1e-9)) {
    throw InputError("sample_graph: Lipschitz audit failed");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<Atom> atoms;
  atoms.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Point p(v.dim());
    for (std::size_t c = 0; c < p.size(); ++c) p[c] = domain.lo[c] + u01(rng) * (domain.hi[c] - domain.lo[c]);
    atoms.push_back({v.compose(p, f(p)), weight, label});
  }
  return AtomicMeasure(v.ambient_dim(), depth, std::move(atoms));
}

}  // namespace conedini
