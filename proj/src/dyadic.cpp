#include "conedini/dyadic.hpp"

#include <cmath>

namespace conedini {

namespace {

// floor(j / 2^s) for s >= 0, valid for negative j.
Coord shift_floor(Coord j, int s) { return j >> s; }

}  // namespace

double DyadicCube::side() const { return std::ldexp(1.0, -k); }

Point DyadicCube::center() const {
  Point c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = std::ldexp(static_cast<double>(j[i]) + 0.5, -k);
  return c;
}

double DyadicCube::diam() const { return std::sqrt(static_cast<double>(dim())) * side(); }

Box DyadicCube::closure() const {
  Box b{Point(dim()), Point(dim())};
  for (std::size_t i = 0; i < dim(); ++i) {
    b.lo[i] = std::ldexp(static_cast<double>(j[i]), -k);
    b.hi[i] = std::ldexp(static_cast<double>(j[i] + 1), -k);
  }
  return b;
}

bool DyadicCube::contains(std::span<const double> x) const {
  if (x.size() != dim()) throw InputError("cube contains: dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) {
    if (static_cast<Coord>(std::floor(std::ldexp(x[i], k))) != j[i]) return false;
  }
  return true;
}

DyadicCube cube_at(std::span<const double> x, int k) {
  DyadicCube q{k, std::vector<Coord>(x.size())};
  for (std::size_t i = 0; i < x.size(); ++i) {
    q.j[i] = static_cast<Coord>(std::floor(std::ldexp(x[i], k)));
  }
  return q;
}

DyadicCube parent(const DyadicCube& q) { return ancestor(q, q.k - 1); }

DyadicCube ancestor(const DyadicCube& q, int k) {
  if (k > q.k) throw InputError("ancestor: generation is finer than the cube");
  DyadicCube a{k, q.j};
  for (auto& c : a.j) c = shift_floor(c, q.k - k);
  return a;
}

bool is_ancestor_or_self(const DyadicCube& a, const DyadicCube& q) {
  if (a.k > q.k || a.dim() != q.dim()) return false;
  return ancestor(q, a.k) == a;
}

std::vector<DyadicCube> children(const DyadicCube& q) {
  const std::size_t n = q.dim();
  std::vector<DyadicCube> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    DyadicCube c{q.k + 1, std::vector<Coord>(n)};
    // Highest bit on the first coordinate gives lexicographic order.
    for (std::size_t i = 0; i < n; ++i) c.j[i] = 2 * q.j[i] + static_cast<Coord>((mask >> (n - 1 - i)) & 1U);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace conedini
