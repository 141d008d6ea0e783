#include "conedini/generators.hpp"

#include <cmath>
#include <random>

namespace conedini {

AtomicMeasure gen_four_corner(int depth, int index_depth, Point shift, double total_mass) {
  if (depth < 1) throw InputError("four-corner: depth must be at least 1");
  if (depth > 12) throw InputError("four-corner: depth above 12 is not supported");
  if (shift.size() != 2) throw InputError("four-corner: shift must be a point of R^2");
  const std::size_t count = std::size_t{1} << (2 * depth);
  const double side = std::ldexp(1.0, -2 * depth);
  const double weight = total_mass / static_cast<double>(count);

  std::vector<Atom> atoms;
  atoms.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    // Base-4 digits from the coarsest level; each digit picks a corner.
    double x = 0.0;
    double y = 0.0;
    for (int l = 0; l < depth; ++l) {
      const std::size_t digit = (t >> (2 * (depth - 1 - l))) & 3U;
      const double step = 0.75 * std::ldexp(1.0, -2 * l);
      if (digit & 2U) x += step;
      if (digit & 1U) y += step;
    }
    atoms.push_back({{x + side / 2 + shift[0], y + side / 2 + shift[1]}, weight, "cantor"});
  }
  return AtomicMeasure(2, index_depth, std::move(atoms));
}

GeneratedGraph gen_graph(const GraphSpec& spec) {
  if (!(spec.alpha > 0.0)) throw InputError("gen_graph: alpha must be positive");
  if (spec.n < 2 || spec.m < 1 || spec.m >= spec.n) throw InputError("gen_graph: need 1 <= m <= n - 1");

  std::mt19937_64 rng(spec.seed);
  Subspace v = Subspace::coordinate(spec.n, spec.m);
  if (spec.random_direction) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Point> frame(spec.m, Point(spec.n));
    for (auto& b : frame)
      for (auto& c : b) c = gauss(rng);
    v = Subspace::span_of(spec.n, frame);
  }
  const std::uint64_t field_seed = rng();
  const std::uint64_t sample_seed = rng();
  SineField f = SineField::random(spec.m, spec.n - spec.m, spec.alpha / 2.0, field_seed, 3, spec.offset);
  const Box domain{Point(spec.m, 0.0), Point(spec.m, 1.0)};
  const double weight = spec.count > 0 ? spec.total_mass / static_cast<double>(spec.count) : 1.0;
  AtomicMeasure mu =
      sample_graph(v, spec.alpha / 2.0, f, spec.count, domain, sample_seed, spec.index_depth, weight, "graph");
  return {std::move(v), std::move(f), std::move(mu)};
}

AtomicMeasure gen_mixture(std::size_t graph_count, int cantor_depth, std::uint64_t seed, int index_depth) {
  GraphSpec spec;
  spec.count = graph_count;
  spec.seed = seed;
  spec.index_depth = index_depth;
  spec.total_mass = 0.5;
  const GeneratedGraph g = gen_graph(spec);
  const AtomicMeasure cantor = gen_four_corner(cantor_depth, index_depth, {0.0, 0.0}, 0.5);

  std::vector<Atom> atoms = g.measure.atoms();
  // The Cantor copy spans scales 64 down to 1/16, the same range the
  // annuli of generations 0..8 probe; it sits far along V from the graph.
  const double scale = 64.0;
  const double sx = 100.0;
  const double sy = -32.0;
  for (Atom a : cantor.atoms()) {
    a.x = {sx + scale * a.x[0], sy + scale * a.x[1]};
    atoms.push_back(std::move(a));
  }
  return AtomicMeasure(2, index_depth, std::move(atoms));
}

}  // namespace conedini
