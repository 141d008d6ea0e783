#pragma once

#include "conedini/geometry.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace conedini {

using Coord = std::int64_t;

/// Half-open dyadic cube prod_i [j_i 2^-k, (j_i + 1) 2^-k).
struct DyadicCube {
  int k = 0;
  std::vector<Coord> j;

  std::size_t dim() const { return j.size(); }
  double side() const;
  Point center() const;
  double diam() const;
  /// Closure of the cube.
  Box closure() const;
  /// Half-open membership.
  bool contains(std::span<const double> x) const;

  friend auto operator<=>(const DyadicCube&, const DyadicCube&) = default;
  friend bool operator==(const DyadicCube&, const DyadicCube&) = default;
};

/// The unique generation-k cube containing x.
DyadicCube cube_at(std::span<const double> x, int k);
DyadicCube parent(const DyadicCube& q);
/// The 2^n children in lexicographic order.
std::vector<DyadicCube> children(const DyadicCube& q);
inline Point center(const DyadicCube& q) { return q.center(); }
inline double side(const DyadicCube& q) { return q.side(); }

/// Ancestor of q at generation k <= q.k.
DyadicCube ancestor(const DyadicCube& q, int k);
/// True when a is q or an ancestor of q.
bool is_ancestor_or_self(const DyadicCube& a, const DyadicCube& q);

}  // namespace conedini
