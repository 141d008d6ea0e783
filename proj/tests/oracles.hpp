#pragma once

// Randomized checks of the annulus geometry, shared by the unit tests and the
// acceptance binary. Each returns the number of failed trials.

#include "conedini/annulus.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>

namespace testsupport {

struct AnnulusCase {
  conedini::Subspace v;
  double alpha;
  conedini::DyadicCube q;
};

inline AnnulusCase random_annulus_case(Rng& rng, std::size_t n) {
  const std::size_t m = static_cast<std::size_t>(rng.integer(1, static_cast<long>(n) - 1));
  conedini::DyadicCube q{static_cast<int>(rng.integer(-3, 8)), {}};
  for (std::size_t i = 0; i < n; ++i) q.j.push_back(rng.integer(-50, 50));
  return {rng.subspace(n, m), rng.log_uniform(0.25, 4.0), q};
}

inline Point random_unit_in(Rng& rng, const std::vector<Point>& basis, std::size_t n) {
  Point u(n, 0.0);
  for (const auto& e : basis) {
    const double c = rng.gauss();
    for (std::size_t i = 0; i < n; ++i) u[i] += c * e[i];
  }
  const double len = conedini::norm(u);
  for (auto& c : u) c /= len;
  return u;
}

/// Unit vector with dist(u, V) = sin t and dist(u, V^perp) = cos t for
/// t drawn inside the opening of X(V, alpha).
inline Point random_cone_direction(Rng& rng, const conedini::Subspace& v, double alpha) {
  const std::size_t n = v.ambient_dim();
  const Point a = random_unit_in(rng, v.basis(), n);
  const Point b = random_unit_in(rng, v.complement_basis(), n);
  const double t = rng.uniform(std::atan(alpha) + 1e-6, std::numbers::pi / 2);
  Point u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = std::cos(t) * a[i] + std::sin(t) * b[i];
  return u;
}

inline Point random_point_in(Rng& rng, const conedini::Box& box) {
  Point p(box.dim());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = rng.uniform(box.lo[i], box.hi[i]);
  return p;
}

inline conedini::Offset offset_of(const conedini::DyadicCube& r, const conedini::DyadicCube& q) {
  conedini::Offset d(r.dim());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = r.j[i] - q.j[i];
  return d;
}

/// A uniformly random member of Delta*_{Q,X} by rejection over the bounding box.
inline conedini::DyadicCube random_member(Rng& rng, const conedini::DyadicCube& q,
                                          const conedini::AnnulusPattern& pattern) {
  const conedini::Coord reach = pattern.reach();
  conedini::Offset d(q.dim());
  while (true) {
    for (auto& c : d) c = rng.integer(-reach, reach);
    if (pattern.contains(d)) break;
  }
  conedini::DyadicCube r = q;
  for (std::size_t i = 0; i < d.size(); ++i) r.j[i] += d[i];
  return r;
}

/// Claim 1: for x in Q and y in X_x with |y - x| in [s/2, s], y lies in the
/// annulus (|y - x_Q| in [r/3, r]) and its cube belongs to Delta*_{Q,X}.
inline std::size_t shell_containment_failures(Rng& rng, std::size_t trials, double tol = 1e-9) {
  std::size_t failures = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 3));
    const AnnulusCase c = random_annulus_case(rng, n);
    const conedini::Cone cone(c.v, c.alpha);
    const conedini::AnnulusPattern pattern(cone);
    const double r = conedini::radius_r(c.q, cone);
    const double s = conedini::radius_s(c.q, cone);
    const Point x = random_point_in(rng, c.q.closure());
    const Point u = random_cone_direction(rng, c.v, c.alpha);
    const double rho = rng.uniform(s / 2, s);
    Point y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + rho * u[i];
    const double dist = conedini::distance(y, c.q.center());
    const double slack = tol * c.q.side();
    const bool ok = conedini::in_cone(cone, x, y) && dist >= r / 3 - slack && dist <= r + slack &&
                    pattern.contains(offset_of(conedini::cube_at(y, c.q.k), c.q));
    if (!ok) ++failures;
  }
  return failures;
}

struct SeparationFailures {
  std::size_t ball = 0;       ///< closure(R) meets B(x_Q, r/4)
  std::size_t cone_gap = 0;   ///< a point near R falls outside X_x(V, alpha/2)
  std::size_t hausdorff = 0;  ///< hausdorff(Q, R) > C_1 side Q
};

/// Claims 2 and 3 on random members R of Delta*_{Q,X}. The cone-gap claim
/// samples `samples` pairs (x in Q, z within 2 diam R of R).
inline SeparationFailures separation_failures(Rng& rng, std::size_t trials, std::size_t samples,
                                              double tol = 1e-9) {
  SeparationFailures f;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 3));
    const AnnulusCase c = random_annulus_case(rng, n);
    const conedini::Cone cone(c.v, c.alpha);
    const conedini::Cone half(c.v, c.alpha / 2);
    const conedini::AnnulusPattern pattern(cone);
    const conedini::DyadicCube rc = random_member(rng, c.q, pattern);
    const conedini::Box qb = c.q.closure();
    const conedini::Box rb = rc.closure();
    const double r = conedini::radius_r(c.q, cone);

    if (!(conedini::gap(rb, c.q.center()) > r / 4)) ++f.ball;

    const double c1 = conedini::annulus_hausdorff_constant(n, c.alpha);
    if (conedini::hausdorff(qb, rb) > c1 * c.q.side() * (1 + tol)) ++f.hausdorff;

    const double reach = 2 * rc.diam();
    for (std::size_t s = 0; s < samples; ++s) {
      const Point x = random_point_in(rng, qb);
      Point z = random_point_in(rng, rb);
      const Point dir = rng.gaussian_point(n);
      const double len = reach * std::pow(rng.uniform(0.0, 1.0), 1.0 / static_cast<double>(n)) /
                         conedini::norm(dir);
      for (std::size_t i = 0; i < n; ++i) z[i] += len * dir[i];
      if (!conedini::in_cone(half, x, z)) {
        ++f.cone_gap;
        break;
      }
    }
  }
  return f;
}

}  // namespace testsupport
