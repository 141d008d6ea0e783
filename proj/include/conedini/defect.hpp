#pragma once

#include "conedini/annulus.hpp"
#include "conedini/measure.hpp"

#include <limits>
#include <map>
#include <vector>

namespace conedini {

enum class Execution { Serial, Parallel };

/// Defect(mu, Q, X) = sum_{R in Delta*_{Q,X}} mu(R) / mu(Q), and 0 when mu(Q) = 0.
double defect(const AtomicMeasure& mu, const DyadicCube& q, const AnnulusPattern& pattern);
double defect(const AtomicMeasure& mu, const DyadicCube& q, const Cone& cone);

/// Truncated conical Dini function and the per-cube defects it is built from.
struct DiniProfile {
  Cone cone;
  int depth = 0;
  /// G^K at each atom.
  std::vector<double> atom_values;
  /// Defect of every occupied cube, indexed [generation][cell of mu.level(k)].
  std::vector<std::vector<double>> cube_defects;
  /// Defect(Q) * mu(Q), same layout.
  std::vector<std::vector<double>> cube_weighted;
};

/// Computes defects for every occupied cube of generations 0..K and sums them
/// along each atom's chain. Requires K <= mu.depth().
DiniProfile dini_profile(const AtomicMeasure& mu, const AnnulusPattern& pattern, int depth,
                         Execution exec = Execution::Parallel);

/// G^K(x) = sum_{k=0}^{K} Defect(mu, cube_at(x, k), X).
double dini_truncated(const AtomicMeasure& mu, std::span<const double> x, const AnnulusPattern& pattern,
                      int depth);
double dini_truncated(const AtomicMeasure& mu, std::span<const double> x, const Cone& cone, int depth);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class CubeTree;
using CubeWeights = std::map<DyadicCube, double>;

/// S_{T,b}(mu, x) = sum_{Q in T} b(Q) chi_Q(x) / mu(Q), with 0/0 = 0 and
/// b/0 = infinity for b > 0. Missing entries of b are zero.
double normalized_sum(const CubeTree& tree, const CubeWeights& b, const AtomicMeasure& mu,
                      std::span<const double> x);

}  // namespace conedini
