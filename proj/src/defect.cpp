#include "conedini/defect.hpp"

#include "conedini/kernels.hpp"
#include "conedini/tree.hpp"

namespace conedini {

double defect(const AtomicMeasure& mu, const DyadicCube& q, const AnnulusPattern& pattern) {
  if (q.dim() != mu.ambient_dim() || q.dim() != pattern.ambient_dim()) {
    throw InputError("defect: dimension mismatch");
  }
  const double mq = mu.mass(q);
  if (mq == 0.0) return 0.0;

  Offset d(q.dim());
  double sum = 0.0;
  if (q.k >= 0 && q.k <= mu.depth()) {
    const GenerationIndex& lvl = mu.level(q.k);
    for (std::size_t r = 0; r < lvl.size(); ++r) {
      const auto jr = lvl.coords(r);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = jr[i] - q.j[i];
      if (pattern.contains(d)) sum += lvl.mass(r);
    }
  } else {
    for (const auto& a : mu.atoms()) {
      const DyadicCube r = cube_at(a.x, q.k);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = r.j[i] - q.j[i];
      if (pattern.contains(d)) sum += a.weight;
    }
  }
  return sum / mq;
}

double defect(const AtomicMeasure& mu, const DyadicCube& q, const Cone& cone) {
  return defect(mu, q, AnnulusPattern(cone));
}

DiniProfile dini_profile(const AtomicMeasure& mu, const AnnulusPattern& pattern, int depth, Execution exec) {
  if (depth < 0) throw InputError("dini: depth must be nonnegative");
  if (depth > mu.depth()) throw InputError("dini: measure is indexed only to depth " + std::to_string(mu.depth()));
  if (mu.ambient_dim() != pattern.ambient_dim()) throw InputError("dini: dimension mismatch");

  DiniProfile prof{pattern.cone(), depth, {}, {}, {}};
  std::vector<const GenerationIndex*> levels;
  for (int k = 0; k <= depth; ++k) {
    const GenerationIndex& lvl = mu.level(k);
    levels.push_back(&lvl);
    std::vector<double> weighted = exec == Execution::Parallel ? kernels::annulus_masses_omp(lvl, pattern)
                                                               : kernels::annulus_masses_serial(lvl, pattern);
    std::vector<double> defects(lvl.size());
    for (std::size_t c = 0; c < lvl.size(); ++c) defects[c] = weighted[c] / lvl.mass(c);
    prof.cube_defects.push_back(std::move(defects));
    prof.cube_weighted.push_back(std::move(weighted));
  }
  prof.atom_values = exec == Execution::Parallel ? kernels::chain_sums_omp(levels, prof.cube_defects, mu.size())
                                                 : kernels::chain_sums_serial(levels, prof.cube_defects, mu.size());
  return prof;
}

double dini_truncated(const AtomicMeasure& mu, std::span<const double> x, const AnnulusPattern& pattern,
                      int depth) {
  if (depth < 0) throw InputError("dini: depth must be nonnegative");
  double total = 0.0;
  for (int k = 0; k <= depth; ++k) total += defect(mu, cube_at(x, k), pattern);
  return total;
}

double dini_truncated(const AtomicMeasure& mu, std::span<const double> x, const Cone& cone, int depth) {
  return dini_truncated(mu, x, AnnulusPattern(cone), depth);
}

double normalized_sum(const CubeTree& tree, const CubeWeights& b, const AtomicMeasure& mu,
                      std::span<const double> x) {
  double total = 0.0;
  for (int i = 0; i <= tree.depth(); ++i) {
    const DyadicCube q = cube_at(x, tree.top().k + i);
    if (!tree.contains(q)) continue;
    const auto it = b.find(q);
    const double bq = it == b.end() ? 0.0 : it->second;
    if (bq == 0.0) continue;
    const double mq = mu.mass(q);
    if (mq == 0.0) return kInfinity;
    total += bq / mq;
  }
  return total;
}

}  // namespace conedini
