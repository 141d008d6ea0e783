#include "conedini/decompose.hpp"

#include <algorithm>
#include <cmath>

namespace conedini {

const char* to_string(AtomClass c) {
  return c == AtomClass::GraphCarried ? "graph-carried" : "singular-suspect";
}

namespace {

const AtomicMeasure& indexed_to(const AtomicMeasure& mu, int depth, std::optional<AtomicMeasure>& storage) {
  if (depth <= mu.depth()) return mu;
  storage.emplace(mu.reindexed(depth));
  return *storage;
}

}  // namespace

std::vector<std::vector<double>> dini_table(const AtomicMeasure& mu, const ConeGrid& grid, int depth) {
  if (grid.cones.empty()) throw InputError("decompose: empty cone grid");
  if (grid.n != mu.ambient_dim()) throw InputError("decompose: grid and measure dimensions differ");
  std::optional<AtomicMeasure> storage;
  const AtomicMeasure& m = indexed_to(mu, depth, storage);

  std::vector<std::vector<double>> table(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(grid.size()); ++c) {
    const AnnulusPattern pattern(grid.cones[static_cast<std::size_t>(c)]);
    table[static_cast<std::size_t>(c)] = dini_profile(m, pattern, depth).atom_values;
  }
  return table;
}

double adaptive_theta(const std::vector<double>& per_atom_min) {
  double smallest = kInfinity;
  for (std::size_t i = 0; i < per_atom_min.size(); i += 2)
    if (per_atom_min[i] > 0.0) smallest = std::min(smallest, per_atom_min[i]);
  if (!std::isfinite(smallest)) return 1e-9;
  return std::max(1e-9, 0.5 * smallest);
}

DecompositionReport decompose(const AtomicMeasure& mu, const ConeGrid& grid, int depth,
                              std::optional<double> theta) {
  if (depth < 0) throw InputError("decompose: depth must be nonnegative");
  const auto table = dini_table(mu, grid, depth);

  DecompositionReport rep;
  rep.depth = depth;
  rep.grid = grid.descriptor();
  rep.atoms.resize(mu.size());
  std::vector<double> mins(mu.size());
  for (std::size_t a = 0; a < mu.size(); ++a) {
    AtomVerdict v{0, table[0][a], AtomClass::SingularSuspect};
    for (std::size_t c = 1; c < table.size(); ++c) {
      if (table[c][a] < v.g) {
        v.g = table[c][a];
        v.best_cone = c;
      }
    }
    rep.atoms[a] = v;
    mins[a] = v.g;
  }

  rep.theta_adaptive = !theta.has_value();
  rep.theta = theta ? *theta : adaptive_theta(mins);

  bool labeled = true;
  Confusion conf;
  for (std::size_t a = 0; a < mu.size(); ++a) {
    AtomVerdict& v = rep.atoms[a];
    v.cls = v.g <= rep.theta ? AtomClass::GraphCarried : AtomClass::SingularSuspect;
    const double w = mu.atom(a).weight;
    if (v.cls == AtomClass::GraphCarried) rep.carried_mass += w;
    else rep.singular_mass += w;

    const std::string& label = mu.atom(a).label;
    if (label.empty()) labeled = false;
    const bool truth_graph = label == "graph";
    const bool carried = v.cls == AtomClass::GraphCarried;
    if (truth_graph && carried) ++conf.graph_carried;
    else if (truth_graph) ++conf.graph_missed;
    else if (carried) ++conf.other_carried;
    else ++conf.other_singular;
  }
  if (labeled && !mu.empty()) rep.confusion = conf;
  return rep;
}

std::pair<AtomicMeasure, AtomicMeasure> split_measure(const AtomicMeasure& mu, const DecompositionReport& report) {
  if (report.atoms.size() != mu.size()) throw InputError("split: report does not match the measure");
  std::vector<Atom> carried;
  std::vector<Atom> singular;
  for (std::size_t a = 0; a < mu.size(); ++a) {
    if (report.atoms[a].cls == AtomClass::GraphCarried) carried.push_back(mu.atom(a));
    else singular.push_back(mu.atom(a));
  }
  return {AtomicMeasure(mu.ambient_dim(), mu.depth(), std::move(carried)),
          AtomicMeasure(mu.ambient_dim(), mu.depth(), std::move(singular))};
}

IntegralDiagnostic integral_diagnostic(const AtomicMeasure& mu, const Cone& cone, std::span<const double> x0,
                                       double r0, int depth) {
  if (x0.size() != mu.ambient_dim()) throw InputError("integral diagnostic: dimension mismatch");
  if (!(r0 >= 0.0)) throw InputError("integral diagnostic: radius must be nonnegative");
  std::optional<AtomicMeasure> storage;
  const AtomicMeasure& m = indexed_to(mu, depth, storage);
  const DiniProfile prof = dini_profile(m, AnnulusPattern(cone), depth);

  const double n = static_cast<double>(mu.ambient_dim());
  const double outer = r0 + 83.0 * std::sqrt(n) * std::max(cone.alpha(), 1.0 / cone.alpha());
  IntegralDiagnostic out;
  for (std::size_t a = 0; a < m.size(); ++a) {
    const Atom& at = m.atom(a);
    const double d = distance(at.x, x0);
    if (at.label == "graph") {
      if (d <= r0) out.lhs += at.weight * prof.atom_values[a];
    } else if (d <= outer) {
      out.rhs += at.weight;
    }
  }
  out.consistent = out.rhs > 0.0 || out.lhs == 0.0;
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : (out.lhs == 0.0 ? 0.0 : kInfinity);
  return out;
}

double median_dini(const AtomicMeasure& mu, const Cone& cone, int depth) {
  if (mu.empty()) throw InputError("median: empty measure");
  std::optional<AtomicMeasure> storage;
  const AtomicMeasure& m = indexed_to(mu, depth, storage);
  std::vector<double> g = dini_profile(m, AnnulusPattern(cone), depth).atom_values;
  std::sort(g.begin(), g.end());
  const std::size_t h = g.size() / 2;
  return g.size() % 2 == 1 ? g[h] : 0.5 * (g[h - 1] + g[h]);
}

}  // namespace conedini
