#pragma once

#include "conedini/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace conedini {

/// Finite direction x opening grid of bad cones with stable integer ids.
struct ConeGrid {
  std::size_t n = 0;
  std::size_t m = 0;
  int resolution = 0;  ///< D, number of directions
  int alpha_levels = 0;  ///< N_alpha
  std::uint64_t seed = 0;
  std::vector<Subspace> directions;
  std::vector<double> alphas;  ///< 2^j for j = -N_alpha..N_alpha
  std::vector<Cone> cones;     ///< id = direction * alphas.size() + alpha index

  std::size_t size() const { return cones.size(); }
  std::size_t direction_of(std::size_t id) const { return id / alphas.size(); }
  std::size_t alpha_index_of(std::size_t id) const { return id % alphas.size(); }
  /// "n,m,D,N_alpha,seed"
  std::string descriptor() const;
};

/// For (n, m) = (2, 1) the directions are the lines through
/// (cos(i pi / D), sin(i pi / D)); otherwise D orthonormalized Gaussian frames
/// drawn from a seeded mt19937_64.
ConeGrid cone_grid(std::size_t n, std::size_t m, int resolution, int alpha_levels, std::uint64_t seed = 0);

}  // namespace conedini
