#include "conedini/tree.hpp"

#include "conedini/kernels.hpp"

#include <algorithm>

namespace conedini {

namespace {

void sort_unique(std::vector<DyadicCube>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool sorted_contains(const std::vector<DyadicCube>& v, const DyadicCube& q) {
  return std::binary_search(v.begin(), v.end(), q);
}

}  // namespace

CubeTree CubeTree::full(const DyadicCube& top, int depth) {
  if (depth < 0) throw InputError("tree: depth must be nonnegative");
  std::vector<std::vector<DyadicCube>> levels{{top}};
  for (int i = 1; i <= depth; ++i) {
    std::vector<DyadicCube> next;
    for (const auto& q : levels.back())
      for (auto& c : children(q)) next.push_back(std::move(c));
    std::sort(next.begin(), next.end());
    levels.push_back(std::move(next));
  }
  return CubeTree(top, std::move(levels));
}

CubeTree CubeTree::support(const AtomicMeasure& mu, const DyadicCube& top, int depth) {
  if (depth < 0) throw InputError("tree: depth must be nonnegative");
  if (mu.ambient_dim() != top.dim()) throw InputError("tree: dimension mismatch");
  std::vector<std::vector<DyadicCube>> levels(static_cast<std::size_t>(depth) + 1);
  for (const auto& a : mu.atoms()) {
    if (!top.contains(a.x)) continue;
    for (int i = 0; i <= depth; ++i) levels[static_cast<std::size_t>(i)].push_back(cube_at(a.x, top.k + i));
  }
  for (auto& lvl : levels) sort_unique(lvl);
  return CubeTree(top, std::move(levels));
}

CubeTree CubeTree::from_cubes(const DyadicCube& top, int depth, std::vector<DyadicCube> cubes) {
  if (depth < 0) throw InputError("tree: depth must be nonnegative");
  std::vector<std::vector<DyadicCube>> levels(static_cast<std::size_t>(depth) + 1);
  for (auto& q : cubes) {
    const int i = q.k - top.k;
    if (q.dim() != top.dim() || i < 0 || i > depth || !is_ancestor_or_self(top, q)) {
      throw InputError("tree: cube outside the top cube or depth range");
    }
    levels[static_cast<std::size_t>(i)].push_back(std::move(q));
  }
  for (auto& lvl : levels) sort_unique(lvl);
  if (levels.front().empty()) throw InputError("tree: top cube missing");
  for (std::size_t i = 1; i < levels.size(); ++i)
    for (const auto& q : levels[i])
      if (!sorted_contains(levels[i - 1], parent(q))) throw InputError("tree: cube set is not ancestor-closed");
  return CubeTree(top, std::move(levels));
}

bool CubeTree::contains(const DyadicCube& q) const {
  const int i = q.k - top_.k;
  if (i < 0 || i > depth()) return false;
  return sorted_contains(levels_[static_cast<std::size_t>(i)], q);
}

std::size_t CubeTree::size() const {
  std::size_t s = 0;
  for (const auto& lvl : levels_) s += lvl.size();
  return s;
}

std::vector<DyadicCube> CubeTree::cubes() const {
  std::vector<DyadicCube> out;
  for (const auto& lvl : levels_) out.insert(out.end(), lvl.begin(), lvl.end());
  return out;
}

std::vector<DyadicCube> CubeTree::children_of(const DyadicCube& q) const {
  std::vector<DyadicCube> out;
  if (!contains(q) || q.k - top_.k >= depth()) return out;
  for (auto& c : children(q))
    if (contains(c)) out.push_back(std::move(c));
  return out;
}

CubeTree CubeTree::without(const std::function<bool(const DyadicCube&)>& drop) const {
  std::vector<std::vector<DyadicCube>> levels(levels_.size());
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    for (const auto& q : levels_[i]) {
      if (drop(q)) continue;
      if (i > 0 && !sorted_contains(levels[i - 1], parent(q))) continue;
      levels[i].push_back(q);
    }
  }
  return CubeTree(top_, std::move(levels));
}

std::vector<DyadicCube> bad_cubes(const CubeTree& tree, const AnnulusPattern& pattern) {
  std::vector<DyadicCube> out;
  for (int i = 1; i <= tree.depth(); ++i) {
    const auto& lvl = tree.level(i);
    std::vector<Offset> cells;
    cells.reserve(lvl.size());
    for (const auto& q : lvl) cells.push_back(q.j);
    const std::vector<char> hit = kernels::annulus_hits_omp(cells, pattern);
    for (std::size_t c = 0; c < lvl.size(); ++c)
      if (hit[c]) out.push_back(lvl[c]);
  }
  return out;
}

Redistribution redistribution_check(const CubeTree& tree, const AtomicMeasure& mu, const AnnulusPattern& pattern,
                                    int level) {
  if (level < 1 || level > tree.depth()) throw InputError("redistribution: level out of range");
  const CubeTree pruned = tree.without([&](const DyadicCube& q) { return mu.mass(q) == 0.0; });
  const std::vector<DyadicCube> bad = bad_cubes(pruned, pattern);
  Redistribution out;
  for (const auto& q : pruned.level(level)) {
    const double mq = mu.mass(q);
    if (sorted_contains(bad, q)) out.lhs += mq;
    out.rhs += defect(mu, q, pattern) * mq;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct LeafAtoms {
  std::vector<std::size_t> all;  // atoms inside some deepest-level cube
  std::vector<std::size_t> a;    // those with S_{T,b} <= N
  double a_mass = 0.0;
};

LeafAtoms leaf_atoms(const CubeTree& tree, const CubeWeights& b, const AtomicMeasure& mu, double n_bound) {
  LeafAtoms out;
  const int leaf_gen = tree.top().k + tree.depth();
  const auto& leaves = tree.level(tree.depth());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const Atom& at = mu.atom(i);
    if (!sorted_contains(leaves, cube_at(at.x, leaf_gen))) continue;
    out.all.push_back(i);
    if (normalized_sum(tree, b, mu, at.x) <= n_bound) {
      out.a.push_back(i);
      out.a_mass += at.weight;
    }
  }
  return out;
}

double mass_of(const AtomicMeasure& mu, const std::vector<std::size_t>& atoms, const DyadicCube& q) {
  double s = 0.0;
  for (std::size_t i : atoms)
    if (q.contains(mu.atom(i).x)) s += mu.atom(i).weight;
  return s;
}

}  // namespace

LocalizationProperties check_localization(const CubeTree& tree, const CubeWeights& b, const AtomicMeasure& mu,
                                          double n_bound, double epsilon, const std::vector<DyadicCube>& good,
                                          const std::vector<DyadicCube>& bad) {
  LocalizationProperties p;
  const LeafAtoms la = leaf_atoms(tree, b, mu, n_bound);
  p.a_mass = la.a_mass;

  std::vector<DyadicCube> g = good;
  std::vector<DyadicCube> bd = bad;
  sort_unique(g);
  sort_unique(bd);

  // (1) G is empty or an ancestor-closed subfamily of T containing the top.
  p.good_is_tree = true;
  if (!g.empty()) {
    if (!sorted_contains(g, tree.top())) p.good_is_tree = false;
    for (const auto& q : g) {
      if (!tree.contains(q)) p.good_is_tree = false;
      else if (q != tree.top() && !sorted_contains(g, parent(q))) p.good_is_tree = false;
    }
  }

  // (2) G and B partition T, and B is closed under taking children.
  p.bad_child_closed = g.size() + bd.size() == tree.size();
  for (const auto& q : bd) {
    if (!tree.contains(q) || sorted_contains(g, q)) {
      p.bad_child_closed = false;
      continue;
    }
    for (const auto& c : tree.children_of(q))
      if (!sorted_contains(bd, c)) p.bad_child_closed = false;
  }

  // (3) mu(A cap Leaves(G)) >= (1 - eps mu(Top)) mu(A).
  const int leaf_gen = tree.top().k + tree.depth();
  for (std::size_t i : la.a) {
    const DyadicCube leaf = cube_at(mu.atom(i).x, leaf_gen);
    if (sorted_contains(g, leaf)) p.good_leaf_a_mass += mu.atom(i).weight;
  }
  const double bound3 = (1.0 - epsilon * mu.mass(tree.top())) * la.a_mass;
  p.leaf_mass_bound = p.good_leaf_a_mass >= bound3 - 1e-12 * la.a_mass;

  // (4) sum_{Q in G} b(Q) < N / eps, strictly.
  for (const auto& q : g) {
    const auto it = b.find(q);
    if (it != b.end()) p.good_weight_sum += it->second;
  }
  p.weight_sum_bound = p.good_weight_sum < n_bound / epsilon;
  return p;
}

GoodBadPartition localize(const CubeTree& tree, const CubeWeights& b, const AtomicMeasure& mu, double n_bound,
                          double epsilon) {
  if (!(n_bound > 0.0) || !(epsilon > 0.0)) throw InputError("localize: N and epsilon must be positive");
  for (const auto& [q, w] : b)
    if (!(w >= 0.0)) throw InputError("localize: weights must be nonnegative");

  GoodBadPartition out;
  out.n_bound = n_bound;
  out.epsilon = epsilon;
  const LeafAtoms la = leaf_atoms(tree, b, mu, n_bound);

  if (la.a_mass == 0.0) {
    out.degenerate = true;
    out.bad = tree.cubes();
    std::sort(out.bad.begin(), out.bad.end());
  } else {
    const double tau = epsilon * la.a_mass;
    // Stopping time from the top: a cube stays good while every cube on its
    // chain keeps more than a tau-fraction of its mass in A.
    std::vector<DyadicCube> good_prev;
    for (int i = 0; i <= tree.depth(); ++i) {
      std::vector<DyadicCube> good_here;
      for (const auto& q : tree.level(i)) {
        const bool parent_good = i == 0 || sorted_contains(good_prev, parent(q));
        if (parent_good && mass_of(mu, la.a, q) > tau * mu.mass(q)) good_here.push_back(q);
        else out.bad.push_back(q);
      }
      out.good.insert(out.good.end(), good_here.begin(), good_here.end());
      good_prev = std::move(good_here);
    }
    std::sort(out.good.begin(), out.good.end());
    std::sort(out.bad.begin(), out.bad.end());
  }

  out.properties = check_localization(tree, b, mu, n_bound, epsilon, out.good, out.bad);
  if (!out.properties.all()) throw ContractViolation("localize: partition fails the localization properties");
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// First-fit grouping of atoms into sets that satisfy the cone condition.
std::vector<std::vector<std::size_t>> compatible_groups(const AtomicMeasure& mu,
                                                        const std::vector<std::size_t>& atoms,
                                                        const Cone& cone) {
  std::vector<std::vector<std::size_t>> groups;
  Point diff(mu.ambient_dim());
  for (std::size_t i : atoms) {
    bool placed = false;
    for (auto& g : groups) {
      bool ok = true;
      for (std::size_t j : g) {
        for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = mu.atom(i).x[c] - mu.atom(j).x[c];
        if (cone.contains(diff)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        g.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({i});
  }
  return groups;
}

}  // namespace

GraphExtraction draw_graphs(const CubeTree& tree, const AtomicMeasure& mu, const AnnulusPattern& pattern,
                            double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("draw_graphs: delta must lie in (0, 1)");
  if (mu.ambient_dim() != pattern.ambient_dim()) throw InputError("draw_graphs: dimension mismatch");

  GraphExtraction out;
  const CubeTree t = tree.without([&](const DyadicCube& q) { return mu.mass(q) == 0.0; });
  if (t.empty()) return out;

  const int depth = t.depth();
  for (const auto& q : t.level(depth)) out.leaf_mass += mu.mass(q);
  if (out.leaf_mass == 0.0) return out;

  const std::vector<DyadicCube> bad = bad_cubes(t, pattern);
  out.bad_cube_count = bad.size();

  // Weighted defect per level, each reduced in lexicographic cube order.
  std::vector<double> level_weight(static_cast<std::size_t>(depth) + 1, 0.0);
  for (int i = 0; i <= depth; ++i) {
    const auto& lvl = t.level(i);
    std::vector<double> w(lvl.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(lvl.size()); ++c) {
      const auto& q = lvl[static_cast<std::size_t>(c)];
      w[static_cast<std::size_t>(c)] = defect(mu, q, pattern) * mu.mass(q);
    }
    double s = 0.0;
    for (double x : w) s += x;
    level_weight[static_cast<std::size_t>(i)] = s;
  }

  // Smallest i_0 >= 1 whose tail is below delta mu(leaves).
  const int first = std::min(1, depth);
  out.tail_achieved = false;
  out.start_level = depth;
  for (int i0 = first; i0 <= depth; ++i0) {
    double tail = 0.0;
    for (int i = i0; i <= depth; ++i) tail += level_weight[static_cast<std::size_t>(i)];
    if (tail < delta * out.leaf_mass) {
      out.start_level = i0;
      out.tail_achieved = true;
      break;
    }
  }

  const int top_gen = t.top().k;
  const int i0 = out.start_level;
  const int leaf_gen = top_gen + depth;
  const Cone& cone = pattern.cone();

  for (const auto& qtop : t.level(i0)) {
    if (sorted_contains(bad, qtop)) continue;
    // Leaves of the maximal bad-free subtree under qtop: atoms whose whole
    // chain from qtop down to the deepest level avoids bad cubes. Cubes of
    // the subtree that fall in the annulus of another subtree cube would be
    // bad in T as well, so removing annulus cubes changes nothing here.
    std::vector<std::size_t> atoms;
    for (std::size_t a = 0; a < mu.size(); ++a) {
      const Point& x = mu.atom(a).x;
      if (!qtop.contains(x)) continue;
      bool clean = t.contains(cube_at(x, leaf_gen));
      for (int i = i0 + 1; clean && i <= depth; ++i) clean = !sorted_contains(bad, cube_at(x, top_gen + i));
      if (clean) atoms.push_back(a);
    }
    if (atoms.empty()) continue;

    std::vector<Point> pts;
    for (std::size_t a : atoms) pts.push_back(mu.atom(a).x);
    std::vector<std::vector<std::size_t>> groups;
    if (verify_cone_condition(pts, cone.subspace(), cone.alpha()).holds) {
      groups.push_back(std::move(atoms));
    } else {
      groups = compatible_groups(mu, atoms, cone);
      ++out.split_subtrees;
    }

    for (auto& g : groups) {
      std::vector<Point> anchors;
      double covered = 0.0;
      for (std::size_t a : g) {
        anchors.push_back(mu.atom(a).x);
        covered += mu.atom(a).weight;
      }
      out.covered_mass += covered;
      out.patches.push_back(
          {make_patch(cone.subspace(), cone.alpha(), std::move(anchors)), covered, std::move(g), qtop});
    }
  }
  return out;
}

GraphExtraction extract_graphs(const AtomicMeasure& mu, const AnnulusPattern& pattern, double delta, int depth) {
  GraphExtraction out;
  if (mu.empty()) return out;
  const GenerationIndex& base = mu.level(0);
  for (std::size_t c = 0; c < base.size(); ++c) {
    const CubeTree tree = CubeTree::support(mu, base.cube(c), depth);
    GraphExtraction part = draw_graphs(tree, mu, pattern, delta);
    for (auto& p : part.patches) out.patches.push_back(std::move(p));
    out.start_level = std::max(out.start_level, part.start_level);
    out.tail_achieved = out.tail_achieved && part.tail_achieved;
    out.leaf_mass += part.leaf_mass;
    out.covered_mass += part.covered_mass;
    out.bad_cube_count += part.bad_cube_count;
    out.split_subtrees += part.split_subtrees;
  }
  return out;
}

}  // namespace conedini
