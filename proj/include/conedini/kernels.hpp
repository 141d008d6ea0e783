#pragma once

// Data-parallel kernels. Each OpenMP kernel has a serial twin that is kept as
// the reference implementation for tests and benchmarks; both produce
// bit-identical results because every output element is reduced by a single
// thread in a fixed order.

#include "conedini/annulus.hpp"
#include "conedini/measure.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace conedini::kernels {

/// For every occupied cell Q of generation k: sum of mu(R) over R in Delta*_{Q,X}.
std::vector<double> annulus_masses_serial(const GenerationIndex& level, const AnnulusPattern& pattern);
std::vector<double> annulus_masses_omp(const GenerationIndex& level, const AnnulusPattern& pattern);

/// Per-atom sum of per-generation cube values along the atom's chain of cubes.
std::vector<double> chain_sums_serial(const std::vector<const GenerationIndex*>& levels,
                                      const std::vector<std::vector<double>>& cube_values,
                                      std::size_t atom_count);
std::vector<double> chain_sums_omp(const std::vector<const GenerationIndex*>& levels,
                                   const std::vector<std::vector<double>>& cube_values,
                                   std::size_t atom_count);

/// Lexicographically first pair (i, j), i < j, with points[j] in X_{points[i]}.
std::optional<std::pair<std::size_t, std::size_t>> first_cone_violation_serial(
    const std::vector<Point>& points, const Cone& cone);
std::optional<std::pair<std::size_t, std::size_t>> first_cone_violation_omp(
    const std::vector<Point>& points, const Cone& cone);

/// Same-level incidences: flags cells R for which some other cell Q of the
/// list has R in Delta*_{Q,X}. Cells are lattice coordinates of one generation.
std::vector<char> annulus_hits_serial(const std::vector<Offset>& cells, const AnnulusPattern& pattern);
std::vector<char> annulus_hits_omp(const std::vector<Offset>& cells, const AnnulusPattern& pattern);

}  // namespace conedini::kernels
