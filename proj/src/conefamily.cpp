#include "conedini/conefamily.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace conedini {

std::string ConeGrid::descriptor() const {
  return std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(resolution) + "," +
         std::to_string(alpha_levels) + "," + std::to_string(seed);
}

ConeGrid cone_grid(std::size_t n, std::size_t m, int resolution, int alpha_levels, std::uint64_t seed) {
  if (n < 2 || m < 1 || m >= n) throw InputError("cone_grid: need 1 <= m <= n - 1");
  if (resolution < 1) throw InputError("cone_grid: angular resolution must be at least 1");
  if (alpha_levels < 0) throw InputError("cone_grid: alpha levels must be nonnegative");

  ConeGrid g;
  g.n = n;
  g.m = m;
  g.resolution = resolution;
  g.alpha_levels = alpha_levels;
  g.seed = seed;

  if (n == 2 && m == 1) {
    for (int i = 0; i < resolution; ++i) {
      const double t = std::numbers::pi * static_cast<double>(i) / static_cast<double>(resolution);
      g.directions.push_back(Subspace::from_orthonormal(2, {{std::cos(t), std::sin(t)}}));
    }
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < resolution; ++i) {
      std::vector<Point> frame(m, Point(n));
      for (auto& v : frame)
        for (auto& c : v) c = gauss(rng);
      g.directions.push_back(Subspace::span_of(n, frame));
    }
  }

  for (int j = -alpha_levels; j <= alpha_levels; ++j) g.alphas.push_back(std::ldexp(1.0, j));
  for (const auto& v : g.directions)
    for (double a : g.alphas) g.cones.emplace_back(v, a);
  return g;
}

}  // namespace conedini
