#pragma once

#include "conedini/conefamily.hpp"
#include "conedini/defect.hpp"
#include "conedini/measure.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace conedini {

enum class AtomClass { GraphCarried, SingularSuspect };

const char* to_string(AtomClass c);

struct AtomVerdict {
  std::size_t best_cone = 0;  ///< smallest id attaining the minimum
  double g = 0.0;             ///< min over the grid of G^K
  AtomClass cls = AtomClass::SingularSuspect;
};

/// Ground truth is "graph" label versus anything else.
struct Confusion {
  std::size_t graph_carried = 0;   ///< graph-labeled, classified graph-carried
  std::size_t graph_missed = 0;    ///< graph-labeled, classified singular-suspect
  std::size_t other_carried = 0;   ///< not graph-labeled, classified graph-carried
  std::size_t other_singular = 0;  ///< not graph-labeled, classified singular-suspect

  std::size_t total() const { return graph_carried + graph_missed + other_carried + other_singular; }
};

struct DecompositionReport {
  int depth = 0;
  double theta = 0.0;
  bool theta_adaptive = false;
  std::string grid;
  std::vector<AtomVerdict> atoms;
  double carried_mass = 0.0;
  double singular_mass = 0.0;
  std::optional<Confusion> confusion;  ///< present when every atom is labeled
};

/// G^K for every atom and every cone of the grid, indexed [cone][atom].
std::vector<std::vector<double>> dini_table(const AtomicMeasure& mu, const ConeGrid& grid, int depth);

/// max(1e-9, half the smallest positive per-atom minimum over the even-index
/// atoms); 1e-9 when no such value exists.
double adaptive_theta(const std::vector<double>& per_atom_min);

/// Classifies each atom as graph-carried iff min_X G^K_X(x) <= theta. Without
/// theta the adaptive rule is used. The measure is re-indexed when K exceeds
/// its depth.
DecompositionReport decompose(const AtomicMeasure& mu, const ConeGrid& grid, int depth,
                              std::optional<double> theta = std::nullopt);

/// mu restricted to the graph-carried and singular-suspect atoms.
std::pair<AtomicMeasure, AtomicMeasure> split_measure(const AtomicMeasure& mu, const DecompositionReport& report);

struct IntegralDiagnostic {
  double lhs = 0.0;  ///< sum of weight * G^K over graph-labeled atoms in B(x0, r0)
  double rhs = 0.0;  ///< mass of the other atoms in B(x0, r0 + 83 sqrt(n) max(alpha, 1/alpha))
  double ratio = 0.0;
  /// lhs vanishes whenever rhs does.
  bool consistent = true;
};

IntegralDiagnostic integral_diagnostic(const AtomicMeasure& mu, const Cone& cone, std::span<const double> x0,
                                       double r0, int depth);

/// Median of G^K over the atoms for one cone.
double median_dini(const AtomicMeasure& mu, const Cone& cone, int depth);

}  // namespace conedini
