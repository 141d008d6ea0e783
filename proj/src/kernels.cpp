#include "conedini/kernels.hpp"

#include <algorithm>

namespace conedini::kernels {

namespace {

bool within_reach(std::span<const Coord> a, std::span<const Coord> b, Coord reach) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Coord d = a[i] - b[i];
    if (d > reach || d < -reach) return false;
  }
  return true;
}

void offset_between(std::span<const Coord> to, std::span<const Coord> from, Offset& out) {
  for (std::size_t i = 0; i < to.size(); ++i) out[i] = to[i] - from[i];
}

// First cell whose leading coordinate is >= value.
std::size_t lower_bound_first(const GenerationIndex& level, Coord value) {
  std::size_t lo = 0;
  std::size_t hi = level.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (level.coords(mid)[0] < value) lo = mid + 1;
    else hi = mid;
  }
  return lo;
}

bool cone_pair(const Cone& cone, const Point& a, const Point& b, Point& scratch) {
  for (std::size_t i = 0; i < a.size(); ++i) scratch[i] = b[i] - a[i];
  return cone.contains(scratch);
}

}  // namespace

std::vector<double> annulus_masses_serial(const GenerationIndex& level, const AnnulusPattern& pattern) {
  const std::size_t n = pattern.ambient_dim();
  std::vector<double> out(level.size(), 0.0);
  Offset d(n);
  for (std::size_t q = 0; q < level.size(); ++q) {
    double sum = 0.0;
    for (std::size_t r = 0; r < level.size(); ++r) {
      offset_between(level.coords(r), level.coords(q), d);
      if (pattern.contains(d)) sum += level.mass(r);
    }
    out[q] = sum;
  }
  return out;
}

std::vector<double> annulus_masses_omp(const GenerationIndex& level, const AnnulusPattern& pattern) {
  const std::size_t n = pattern.ambient_dim();
  const Coord reach = pattern.reach();
  std::vector<double> out(level.size(), 0.0);

#pragma omp parallel
  {
    Offset d(n);
#pragma omp for schedule(dynamic, 8)
    for (std::ptrdiff_t qi = 0; qi < static_cast<std::ptrdiff_t>(level.size()); ++qi) {
      const auto q = static_cast<std::size_t>(qi);
      const auto jq = level.coords(q);
      // Cells are sorted lexicographically, so candidates form a contiguous
      // range in the leading coordinate.
      const std::size_t begin = lower_bound_first(level, jq[0] - reach);
      const std::size_t end = lower_bound_first(level, jq[0] + reach + 1);
      double sum = 0.0;
      for (std::size_t r = begin; r < end; ++r) {
        if (r == q) continue;
        const auto jr = level.coords(r);
        if (!within_reach(jr, jq, reach)) continue;
        offset_between(jr, jq, d);
        if (pattern.contains(d)) sum += level.mass(r);
      }
      out[q] = sum;
    }
  }
  return out;
}

std::vector<double> chain_sums_serial(const std::vector<const GenerationIndex*>& levels,
                                      const std::vector<std::vector<double>>& cube_values,
                                      std::size_t atom_count) {
  std::vector<double> out(atom_count, 0.0);
  for (std::size_t a = 0; a < atom_count; ++a) {
    double s = 0.0;
    for (std::size_t k = 0; k < levels.size(); ++k) s += cube_values[k][levels[k]->cell_of_atom(a)];
    out[a] = s;
  }
  return out;
}

std::vector<double> chain_sums_omp(const std::vector<const GenerationIndex*>& levels,
                                   const std::vector<std::vector<double>>& cube_values,
                                   std::size_t atom_count) {
  std::vector<double> out(atom_count, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ai = 0; ai < static_cast<std::ptrdiff_t>(atom_count); ++ai) {
    const auto a = static_cast<std::size_t>(ai);
    double s = 0.0;
    for (std::size_t k = 0; k < levels.size(); ++k) s += cube_values[k][levels[k]->cell_of_atom(a)];
    out[a] = s;
  }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> first_cone_violation_serial(
    const std::vector<Point>& points, const Cone& cone) {
  if (points.empty()) return std::nullopt;
  Point scratch(points.front().size());
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (cone_pair(cone, points[i], points[j], scratch)) return std::make_pair(i, j);
  return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> first_cone_violation_omp(
    const std::vector<Point>& points, const Cone& cone) {
  const std::size_t count = points.size();
  if (count == 0) return std::nullopt;
  std::size_t best_i = count;
  std::size_t best_j = count;

#pragma omp parallel
  {
    Point scratch(points.front().size());
    std::size_t local_i = count;
    std::size_t local_j = count;
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(count); ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      if (i > local_i) continue;
      for (std::size_t j = i + 1; j < count; ++j) {
        if (cone_pair(cone, points[i], points[j], scratch)) {
          if (i < local_i) {
            local_i = i;
            local_j = j;
          }
          break;
        }
      }
    }
#pragma omp critical
    {
      if (local_i < best_i) {
        best_i = local_i;
        best_j = local_j;
      }
    }
  }
  if (best_i == count) return std::nullopt;
  return std::make_pair(best_i, best_j);
}

std::vector<char> annulus_hits_serial(const std::vector<Offset>& cells, const AnnulusPattern& pattern) {
  std::vector<char> hit(cells.size(), 0);
  Offset d(pattern.ambient_dim());
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t q = 0; q < cells.size(); ++q) {
      offset_between(cells[r], cells[q], d);
      if (q != r && pattern.contains(d)) {
        hit[r] = 1;
        break;
      }
    }
  }
  return hit;
}

std::vector<char> annulus_hits_omp(const std::vector<Offset>& cells, const AnnulusPattern& pattern) {
  std::vector<char> hit(cells.size(), 0);
  const Coord reach = pattern.reach();
#pragma omp parallel
  {
    Offset d(pattern.ambient_dim());
#pragma omp for schedule(dynamic, 8)
    for (std::ptrdiff_t ri = 0; ri < static_cast<std::ptrdiff_t>(cells.size()); ++ri) {
      const auto r = static_cast<std::size_t>(ri);
      for (std::size_t q = 0; q < cells.size(); ++q) {
        if (q == r || !within_reach(cells[r], cells[q], reach)) continue;
        offset_between(cells[r], cells[q], d);
        if (pattern.contains(d)) {
          hit[r] = 1;
          break;
        }
      }
    }
  }
  return hit;
}

}  // namespace conedini::kernels
