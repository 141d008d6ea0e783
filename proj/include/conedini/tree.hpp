#pragma once

#include "conedini/annulus.hpp"
#include "conedini/defect.hpp"
#include "conedini/lipgraph.hpp"
#include "conedini/measure.hpp"

#include <functional>
#include <string>
#include <vector>

namespace conedini {

/// A finite-depth tree of dyadic cubes: ancestor-closed below a unique top.
/// Level i holds cubes of side 2^-i side(top), sorted lexicographically.
class CubeTree {
 public:
  /// Every descendant of `top` down to `depth` levels.
  static CubeTree full(const DyadicCube& top, int depth);
  /// Descendants of `top` with positive mu-mass.
  static CubeTree support(const AtomicMeasure& mu, const DyadicCube& top, int depth);
  /// Validates that `cubes` is ancestor-closed under `top`.
  static CubeTree from_cubes(const DyadicCube& top, int depth, std::vector<DyadicCube> cubes);

  const DyadicCube& top() const { return top_; }
  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<DyadicCube>& level(int i) const { return levels_.at(static_cast<std::size_t>(i)); }
  bool contains(const DyadicCube& q) const;
  std::size_t size() const;
  bool empty() const { return levels_.front().empty(); }
  std::vector<DyadicCube> cubes() const;
  std::vector<DyadicCube> children_of(const DyadicCube& q) const;

  /// Deepest level: the finite-depth stand-in for the set of leaves.
  std::vector<DyadicCube> leaves() const { return levels_.back(); }

  /// Removes every cube for which `drop` holds together with its descendants.
  CubeTree without(const std::function<bool(const DyadicCube&)>& drop) const;

 private:
  CubeTree(DyadicCube top, std::vector<std::vector<DyadicCube>> levels)
      : top_(std::move(top)), levels_(std::move(levels)) {}

  DyadicCube top_;
  std::vector<std::vector<DyadicCube>> levels_;
};

/// Cubes R of the tree with R in Delta*_{Q,X} for some Q of the tree.
std::vector<DyadicCube> bad_cubes(const CubeTree& tree, const AnnulusPattern& pattern);

struct Redistribution {
  double lhs = 0.0;  ///< mass of bad cubes at the level
  double rhs = 0.0;  ///< sum of Defect(mu, Q, X) mu(Q) over the level
};

/// Both sides of the bad-mass redistribution inequality at level i, after
/// deleting mu-null cubes from the tree.
Redistribution redistribution_check(const CubeTree& tree, const AtomicMeasure& mu,
                                    const AnnulusPattern& pattern, int level);

struct LocalizationProperties {
  bool good_is_tree = false;     ///< (1)
  bool bad_child_closed = false; ///< (2)
  bool leaf_mass_bound = false;  ///< (3)
  bool weight_sum_bound = false; ///< (4)
  double a_mass = 0.0;
  double good_leaf_a_mass = 0.0;
  double good_weight_sum = 0.0;

  bool all() const { return good_is_tree && bad_child_closed && leaf_mass_bound && weight_sum_bound; }
};

struct GoodBadPartition {
  std::vector<DyadicCube> good;  ///< sorted; empty or a tree under the top
  std::vector<DyadicCube> bad;   ///< sorted
  double n_bound = 0.0;
  double epsilon = 0.0;
  /// Set when mu(A) = 0 and every cube was declared bad.
  bool degenerate = false;
  LocalizationProperties properties;
};

/// Splits the tree into good and bad cubes by a stopping time: with
/// A = { leaf atoms x : S_{T,b}(x) <= N } and tau = eps mu(A), a cube is good
/// iff every P between it and the top has mu(P cap A) > tau mu(P). The four
/// localization properties are then verified directly; a failure throws
/// ContractViolation.
GoodBadPartition localize(const CubeTree& tree, const CubeWeights& b, const AtomicMeasure& mu,
                          double n_bound, double epsilon);

/// Direct evaluation of the four localization properties for any partition.
LocalizationProperties check_localization(const CubeTree& tree, const CubeWeights& b, const AtomicMeasure& mu,
                                          double n_bound, double epsilon, const std::vector<DyadicCube>& good,
                                          const std::vector<DyadicCube>& bad);

struct ExtractedPatch {
  LipGraphPatch patch;
  double covered_mass = 0.0;
  std::vector<std::size_t> atom_indices;
  DyadicCube subtree_top;
};

struct GraphExtraction {
  std::vector<ExtractedPatch> patches;
  int start_level = 0;            ///< i_0
  bool tail_achieved = true;
  double leaf_mass = 0.0;
  double covered_mass = 0.0;
  std::size_t bad_cube_count = 0;
  /// Atom sets that failed the pairwise cone check (pairs closer than the
  /// finest annulus can resolve) and were split into compatible groups.
  std::size_t split_subtrees = 0;
};

/// Draws Lipschitz graphs through the leaves of the tree: removes mu-null
/// cubes, marks bad cubes, picks the first level i_0 >= 1 whose weighted
/// defect tail is below delta mu(leaves), and turns each bad-free subtree
/// under a non-bad cube of level i_0 into one or more cone-compatible patches.
GraphExtraction draw_graphs(const CubeTree& tree, const AtomicMeasure& mu, const AnnulusPattern& pattern,
                            double delta);

/// draw_graphs over every occupied generation-0 cube, merged in lexicographic order.
GraphExtraction extract_graphs(const AtomicMeasure& mu, const AnnulusPattern& pattern, double delta, int depth);

}  // namespace conedini
