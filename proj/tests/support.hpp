#pragma once

// Shared generators and independent oracles for the test binaries.

#include "conedini/annulus.hpp"
#include "conedini/geometry.hpp"
#include "conedini/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace testsupport {

using conedini::Point;

struct Rng {
  explicit Rng(std::uint64_t seed) : g(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }
  bool coin() { return integer(0, 1) == 1; }
  double gauss() { return std::normal_distribution<double>(0.0, 1.0)(g); }

  Point point(std::size_t n, double lo, double hi) {
    Point p(n);
    for (auto& c : p) c = uniform(lo, hi);
    return p;
  }
  Point gaussian_point(std::size_t n) {
    Point p(n);
    for (auto& c : p) c = gauss();
    return p;
  }
  /// Opening in [lo, hi] drawn log-uniformly.
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  conedini::Subspace subspace(std::size_t n, std::size_t m) {
    std::vector<Point> vs;
    for (std::size_t i = 0; i < m; ++i) vs.push_back(gaussian_point(n));
    return conedini::Subspace::span_of(n, vs);
  }

  std::mt19937_64 g;
};

inline double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Modified Gram-Schmidt on the raw spanning vectors, then the residual norm.
inline double gram_schmidt_dist(const Point& x, std::vector<Point> span) {
  std::vector<Point> q;
  for (auto v : span) {
    for (const auto& e : q) {
      const double c = dot(v, e);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * e[i];
    }
    const double len = std::sqrt(dot(v, v));
    for (auto& c : v) c /= len;
    q.push_back(v);
  }
  Point r = x;
  for (const auto& e : q) {
    const double c = dot(r, e);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * e[i];
  }
  return std::sqrt(dot(r, r));
}

/// All-pairs minimum distance.
inline double pairwise_min(const std::vector<Point>& s, const std::vector<Point>& t) {
  double best = INFINITY;
  for (const auto& a : s)
    for (const auto& b : t) {
      double d = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
      best = std::min(best, std::sqrt(d));
    }
  return best;
}

/// All-pairs sup-inf deviation.
inline double pairwise_excess(const std::vector<Point>& s, const std::vector<Point>& t) {
  double worst = 0.0;
  for (const auto& a : s) worst = std::max(worst, pairwise_min({a}, t));
  return worst;
}

/// Does some point of an (steps+1)^n grid over the box lie strictly inside the cone?
inline bool grid_box_meets_cone(const conedini::Box& box, const conedini::Cone& cone, int steps) {
  const std::size_t n = box.dim();
  std::vector<int> idx(n, 0);
  Point z(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i)
      z[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * static_cast<double>(idx[i]) / steps;
    if (cone.contains(z)) return true;
    std::size_t axis = 0;
    while (axis < n && ++idx[axis] > steps) idx[axis++] = 0;
    if (axis == n) return false;
  }
}

/// Exact sup over the closed box of g for V = span(e_1) in R^2:
/// max |z_2| - alpha min |z_1|.
inline double axis_cone_sup_2d(const conedini::Box& box, double alpha) {
  const double max_dy = std::max(std::abs(box.lo[1]), std::abs(box.hi[1]));
  const double min_dx = (box.lo[0] <= 0.0 && box.hi[0] >= 0.0) ? 0.0
                                                               : std::min(std::abs(box.lo[0]), std::abs(box.hi[0]));
  return max_dy - alpha * min_dx;
}

/// R in Delta*_{Q,X} straight from the three geometric conditions on the
/// cubes themselves, without the lattice-offset pattern.
inline bool direct_delta_member(const conedini::DyadicCube& r, const conedini::DyadicCube& q,
                                const conedini::Cone& cone) {
  if (r.k != q.k) return false;
  const double rad = conedini::radius_r(q, cone);
  const conedini::Box b = r.closure();
  const Point c = q.center();
  if (conedini::gap(b, c) > rad) return false;
  double far = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double e = std::max(std::abs(b.lo[i] - c[i]), std::abs(b.hi[i] - c[i]));
    far += e * e;
  }
  if (std::sqrt(far) < rad / 3) return false;
  return conedini::cube_meets_cone_union(r, q, cone).incidence == conedini::Incidence::Meets;
}

/// Random atomic measure inside [0,1)^n with integer weights 1..5.
inline conedini::AtomicMeasure random_measure(Rng& rng, std::size_t n, std::size_t count, int depth,
                                              double lo = 0.0, double hi = 1.0) {
  std::vector<conedini::Atom> atoms;
  for (std::size_t i = 0; i < count; ++i)
    atoms.push_back({rng.point(n, lo, hi), static_cast<double>(rng.integer(1, 5)), ""});
  return conedini::AtomicMeasure(n, depth, std::move(atoms));
}

}  // namespace testsupport
