#pragma once

#include "conedini/dyadic.hpp"
#include "conedini/geometry.hpp"

#include <memory>
#include <span>
#include <vector>

namespace conedini {

/// r_{Q,X} = 81 sqrt(n) max(alpha, 1/alpha) side(Q).
double radius_r(const DyadicCube& q, const Cone& cone);
/// s_{Q,X} = r_{Q,X} - sqrt(n) side(Q).
double radius_s(const DyadicCube& q, const Cone& cone);

/// Does closure(R) meet the cone union X_Q = U_{x in closure(Q)} X_x?
/// Reduced to box-versus-cone on closure(R) - closure(Q). `tol` defaults to
/// 1e-9 side(Q) when not positive.
ConeBoxResult cube_meets_cone_union(const DyadicCube& r, const DyadicCube& q, const Cone& cone,
                                    double tol = 0.0);

using Offset = std::vector<Coord>;

/// Membership in the discretized conical annulus as a function of the lattice
/// offset j_R - j_Q between same-generation cubes. The predicate is evaluated
/// at unit scale; translation by integers and dyadic rescaling leave it
/// unchanged, so one pattern serves every cube of every generation.
class AnnulusPattern {
 public:
  explicit AnnulusPattern(Cone cone, BranchBoundLimits limits = {});

  const Cone& cone() const { return cone_; }
  std::size_t ambient_dim() const { return cone_.ambient_dim(); }
  /// r and s for a unit cube.
  double unit_r() const { return r_; }
  double unit_s() const { return s_; }
  /// Every member offset satisfies |d_i| <= reach().
  Coord reach() const { return reach_; }

  struct Membership {
    bool member = false;
    bool conservative = false;
  };
  Membership classify(std::span<const Coord> offset) const;
  bool contains(std::span<const Coord> offset) const { return classify(offset).member; }

  /// All member offsets, lexicographically sorted. Computed once per pattern;
  /// safe to call concurrently.
  const std::vector<Offset>& offsets() const;

 private:
  struct Cache;

  Cone cone_;
  BranchBoundLimits limits_;
  double r_;
  double s_;
  Coord reach_;
  std::shared_ptr<Cache> cache_;
};

/// Delta*_{Q,X}: same-generation cubes meeting the conical annulus A_{Q,X}.
std::vector<DyadicCube> delta_star(const DyadicCube& q, const AnnulusPattern& pattern);
std::vector<DyadicCube> delta_star(const DyadicCube& q, const Cone& cone);
/// nabla*_{R,X} = { Q : R in Delta*_{Q,X} }, found by scanning candidate Q.
std::vector<DyadicCube> nabla_star(const DyadicCube& r, const AnnulusPattern& pattern);
std::vector<DyadicCube> nabla_star(const DyadicCube& r, const Cone& cone);

/// Number of unit lattice cubes meeting the closed ball B(0, r + 2 sqrt(n)).
std::size_t annulus_cardinality_bound(std::size_t n, double alpha);
/// r / side + 2 sqrt(n).
double annulus_hausdorff_constant(std::size_t n, double alpha);

}  // namespace conedini
