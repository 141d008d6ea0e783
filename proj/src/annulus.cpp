#include "conedini/annulus.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace conedini {

namespace {

double opening_factor(double alpha) { return std::max(alpha, 1.0 / alpha); }

double unit_radius(std::size_t n, double alpha) {
  return 81.0 * std::sqrt(static_cast<double>(n)) * opening_factor(alpha);
}

// Distance from the center (1/2, ..., 1/2) of the unit cube to the nearest and
// farthest points of [d_i, d_i + 1], per axis.
double near_axis(Coord d) {
  if (d >= 1) return static_cast<double>(d) - 0.5;
  if (d <= -1) return -static_cast<double>(d) - 0.5;
  return 0.0;
}

double far_axis(Coord d) { return std::abs(static_cast<double>(d)) + 0.5; }

}  // namespace

double radius_r(const DyadicCube& q, const Cone& cone) {
  return unit_radius(q.dim(), cone.alpha()) * q.side();
}

double radius_s(const DyadicCube& q, const Cone& cone) {
  return radius_r(q, cone) - std::sqrt(static_cast<double>(q.dim())) * q.side();
}

ConeBoxResult cube_meets_cone_union(const DyadicCube& r, const DyadicCube& q, const Cone& cone,
                                    double tol) {
  if (r.dim() != q.dim() || r.dim() != cone.ambient_dim()) {
    throw InputError("cube_meets_cone_union: dimension mismatch");
  }
  BranchBoundLimits limits;
  limits.tol = tol > 0.0 ? tol : 1e-9 * q.side();
  return box_meets_cone(minkowski_difference(r.closure(), q.closure()), cone, limits);
}

struct AnnulusPattern::Cache {
  std::once_flag once;
  std::vector<Offset> offsets;
};

AnnulusPattern::AnnulusPattern(Cone cone, BranchBoundLimits limits)
    : cone_(std::move(cone)), limits_(limits), cache_(std::make_shared<Cache>()) {
  const std::size_t n = cone_.ambient_dim();
  r_ = unit_radius(n, cone_.alpha());
  s_ = r_ - std::sqrt(static_cast<double>(n));
  reach_ = static_cast<Coord>(std::ceil(r_)) + 1;
}

AnnulusPattern::Membership AnnulusPattern::classify(std::span<const Coord> offset) const {
  const std::size_t n = ambient_dim();
  if (offset.size() != n) throw InputError("annulus: offset dimension mismatch");
  double near_sq = 0.0;
  double far_sq = 0.0;
  for (Coord d : offset) {
    const double a = near_axis(d);
    const double b = far_axis(d);
    near_sq += a * a;
    far_sq += b * b;
  }
  // closure(R) meets B(x_Q, r) and is not inside U(x_Q, r/3).
  if (near_sq > r_ * r_) return {};
  const double inner = r_ / 3.0;
  if (far_sq < inner * inner) return {};

  Box diff{Point(n), Point(n)};
  for (std::size_t i = 0; i < n; ++i) {
    diff.lo[i] = static_cast<double>(offset[i]) - 1.0;
    diff.hi[i] = static_cast<double>(offset[i]) + 1.0;
  }
  const ConeBoxResult hit = box_meets_cone(diff, cone_, limits_);
  return {hit.incidence == Incidence::Meets, hit.conservative};
}

const std::vector<Offset>& AnnulusPattern::offsets() const {
  std::call_once(cache_->once, [this] {
    const std::size_t n = ambient_dim();
    const Coord reach = reach_;
    const double r_sq = r_ * r_;
    const std::size_t slabs = static_cast<std::size_t>(2 * reach + 1);
    std::vector<std::vector<Offset>> per_slab(slabs);

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(slabs); ++s) {
      Offset d(n, 0);
      d[0] = static_cast<Coord>(s) - reach;
      const double first = near_axis(d[0]);
      auto& out = per_slab[static_cast<std::size_t>(s)];
      // Depth-first over the remaining axes, pruned by the partial distance.
      auto recurse = [&](auto&& self, std::size_t axis, double partial) -> void {
        if (axis == n) {
          if (classify(d).member) out.push_back(d);
          return;
        }
        for (Coord c = -reach; c <= reach; ++c) {
          const double a = near_axis(c);
          if (partial + a * a > r_sq) continue;
          d[axis] = c;
          self(self, axis + 1, partial + a * a);
        }
        d[axis] = 0;
      };
      if (first * first <= r_sq) recurse(recurse, 1, first * first);
    }

    for (auto& slab : per_slab)
      for (auto& o : slab) cache_->offsets.push_back(std::move(o));
  });
  return cache_->offsets;
}

std::vector<DyadicCube> delta_star(const DyadicCube& q, const AnnulusPattern& pattern) {
  if (q.dim() != pattern.ambient_dim()) throw InputError("delta_star: dimension mismatch");
  std::vector<DyadicCube> out;
  const auto& offs = pattern.offsets();
  out.reserve(offs.size());
  for (const auto& d : offs) {
    DyadicCube r{q.k, q.j};
    for (std::size_t i = 0; i < d.size(); ++i) r.j[i] += d[i];
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DyadicCube> delta_star(const DyadicCube& q, const Cone& cone) {
  return delta_star(q, AnnulusPattern(cone));
}

std::vector<DyadicCube> nabla_star(const DyadicCube& r, const AnnulusPattern& pattern) {
  const std::size_t n = pattern.ambient_dim();
  if (r.dim() != n) throw InputError("nabla_star: dimension mismatch");
  const Coord reach = pattern.reach();
  std::vector<DyadicCube> out;
  // Candidate Q = R - e for every e in the symmetric bounding box; keep Q iff
  // the offset j_R - j_Q = e is a member of Delta*_{Q,X}.
  Offset e(n, -reach);
  while (true) {
    if (pattern.contains(e)) {
      DyadicCube q{r.k, r.j};
      for (std::size_t i = 0; i < n; ++i) q.j[i] -= e[i];
      out.push_back(std::move(q));
    }
    std::size_t axis = n;
    while (axis > 0) {
      --axis;
      if (e[axis] < reach) {
        ++e[axis];
        break;
      }
      e[axis] = -reach;
      if (axis == 0) {
        std::sort(out.begin(), out.end());
        return out;
      }
    }
  }
}

std::vector<DyadicCube> nabla_star(const DyadicCube& r, const Cone& cone) {
  return nabla_star(r, AnnulusPattern(cone));
}

std::size_t annulus_cardinality_bound(std::size_t n, double alpha) {
  const double rho = unit_radius(n, alpha) + 2.0 * std::sqrt(static_cast<double>(n));
  const Coord reach = static_cast<Coord>(std::ceil(rho)) + 1;
  // Cube [j, j+1]^n meets B(0, rho) iff sum_i gap(0, [j_i, j_i+1])^2 <= rho^2.
  auto axis_gap = [](Coord j) -> double {
    if (j >= 1) return static_cast<double>(j);
    if (j <= -2) return -static_cast<double>(j) - 1.0;
    return 0.0;
  };
  // Tangent cells count; rho^2 is an integer for alpha = 1 and rounding must not drop them.
  const double rho_sq = rho * rho * (1.0 + 1e-12);
  std::size_t count = 0;
  auto recurse = [&](auto&& self, std::size_t axis, double partial) -> void {
    if (axis == n) {
      ++count;
      return;
    }
    for (Coord c = -reach; c <= reach; ++c) {
      const double g = axis_gap(c);
      if (partial + g * g <= rho_sq) self(self, axis + 1, partial + g * g);
    }
  };
  recurse(recurse, 0, 0.0);
  return count;
}

double annulus_hausdorff_constant(std::size_t n, double alpha) {
  return unit_radius(n, alpha) + 2.0 * std::sqrt(static_cast<double>(n));
}

}  // namespace conedini
