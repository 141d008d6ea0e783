#pragma once

#include "conedini/lipgraph.hpp"
#include "conedini/measure.hpp"

#include <cstdint>

namespace conedini {

/// 4^depth atoms at the centers of the depth-level cells of the four-corner
/// Cantor construction in [0,1]^2 (ratio 1/4), weight 4^-depth, label "cantor".
AtomicMeasure gen_four_corner(int depth, int index_depth = 8, Point shift = {0.0, 0.0}, double total_mass = 1.0);

struct GraphSpec {
  std::size_t n = 2;
  std::size_t m = 1;
  /// Opening of the cone the graph is meant for; the field has constant alpha / 2.
  double alpha = 1.0;
  std::size_t count = 500;
  std::uint64_t seed = 0;
  int index_depth = 8;
  /// Draw V at random from the seed instead of span(e_1..e_m).
  bool random_direction = false;
  /// Constant V^perp offset of the field.
  double offset = 0.5;
  double total_mass = 1.0;
};

struct GeneratedGraph {
  Subspace subspace;
  SineField field;
  AtomicMeasure measure;
};

/// Random sine-sum graph over [0,1]^m in V-coordinates, equal weights.
GeneratedGraph gen_graph(const GraphSpec& spec);

/// Half the mass on a graph over the x-axis on [0,1] (constant 1/2), half on
/// the four-corner Cantor measure scaled by 64 and moved to [100,164] x [-32,32].
AtomicMeasure gen_mixture(std::size_t graph_count, int cantor_depth, std::uint64_t seed, int index_depth = 8);

}  // namespace conedini
