#pragma once

#include "conedini/conefamily.hpp"
#include "conedini/decompose.hpp"
#include "conedini/dyadic.hpp"
#include "conedini/lipgraph.hpp"
#include "conedini/measure.hpp"
#include "conedini/tree.hpp"

#include <iosfwd>
#include <string>

namespace conedini::io {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

/// CSV: header "# n=<n> K=<K>", then "x_1,...,x_n,weight[,label]" per atom.
void write_measure_csv(std::ostream& out, const AtomicMeasure& mu);
AtomicMeasure read_measure_csv(std::istream& in);
/// {"n":..,"K":..,"atoms":[{"x":[..],"weight":..,"label":".."}]}
std::string measure_to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const std::string& text);
/// Chooses JSON for a ".json" suffix and CSV otherwise.
AtomicMeasure load_measure(const std::string& path);
void save_measure(const std::string& path, const AtomicMeasure& mu);

/// {"n":..,"m":..,"basis":[[..]],"alpha":..}
std::string cone_to_json(const Cone& cone);
Cone cone_from_json(const std::string& text);
/// {"k":..,"j":[..]}
std::string cube_to_json(const DyadicCube& q);
DyadicCube cube_from_json(const std::string& text);
/// {"basis":[[..]],"alpha":..,"anchors":[[..]],"audited_constant":..}
std::string patch_to_json(const LipGraphPatch& patch);
LipGraphPatch patch_from_json(const std::string& text);
/// Grid export with cone ids.
std::string grid_to_json(const ConeGrid& grid);

/// "atom_index,x_1..x_n,weight,label,cone_id,K,dini_value" rows.
void write_dini_csv(std::ostream& out, const AtomicMeasure& mu, const std::vector<std::size_t>& cone_ids, int depth,
                    const std::vector<double>& values);
std::string report_to_json(const DecompositionReport& report);
/// [{"basis":..,"alpha":..,"anchor_points":..,"covered_mass":..}]
std::string extraction_to_json(const GraphExtraction& extraction);
/// Delta* of one cube as a JSON document.
std::string annulus_to_json(const Cone& cone, const DyadicCube& q, const std::vector<DyadicCube>& cubes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace conedini::io
