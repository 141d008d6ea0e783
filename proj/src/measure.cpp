#include "conedini/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace conedini {

GenerationIndex::GenerationIndex(int k, std::size_t n, const std::vector<Atom>& atoms)
    : k_(k), n_(n), atom_cell_(atoms.size()) {
  std::vector<Coord> cells(atoms.size() * n);
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    const DyadicCube q = cube_at(atoms[a].x, k);
    std::copy(q.j.begin(), q.j.end(), cells.begin() + static_cast<std::ptrdiff_t>(a * n));
  }
  auto key = [&](std::size_t a) { return std::span<const Coord>(cells.data() + a * n, n); };
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ka = key(a);
    const auto kb = key(b);
    return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end());
  });

  // Within a cell the atoms stay in index order, so masses accumulate in the
  // same order as a direct scan.
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t a = order[pos];
    const auto ka = key(a);
    const bool fresh = pos == 0 || !std::equal(ka.begin(), ka.end(), key(order[pos - 1]).begin());
    if (fresh) {
      coords_.insert(coords_.end(), ka.begin(), ka.end());
      mass_.push_back(0.0);
    }
    mass_.back() += atoms[a].weight;
    atom_cell_[a] = mass_.size() - 1;
  }
}

DyadicCube GenerationIndex::cube(std::size_t cell) const {
  const auto c = coords(cell);
  return DyadicCube{k_, std::vector<Coord>(c.begin(), c.end())};
}

std::optional<std::size_t> GenerationIndex::find(std::span<const Coord> j) const {
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto c = coords(mid);
    if (std::lexicographical_compare(c.begin(), c.end(), j.begin(), j.end())) lo = mid + 1;
    else hi = mid;
  }
  if (lo < size()) {
    const auto c = coords(lo);
    if (std::equal(c.begin(), c.end(), j.begin(), j.end())) return lo;
  }
  return std::nullopt;
}

AtomicMeasure::AtomicMeasure(std::size_t n, int depth, std::vector<Atom> atoms)
    : n_(n), depth_(depth), atoms_(std::move(atoms)) {
  if (n < 1) throw InputError("measure: ambient dimension must be positive");
  if (depth < 0) throw InputError("measure: depth must be nonnegative");
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    const Atom& at = atoms_[a];
    if (at.x.size() != n) throw InputError("measure: atom " + std::to_string(a) + " has wrong dimension");
    for (double c : at.x)
      if (!std::isfinite(c)) throw InputError("measure: atom " + std::to_string(a) + " has a non-finite coordinate");
    if (!(at.weight > 0.0) || !std::isfinite(at.weight)) {
      throw InputError("measure: atom " + std::to_string(a) + " must have a positive finite weight");
    }
    total_ += at.weight;
  }
  levels_.reserve(static_cast<std::size_t>(depth) + 1);
  for (int k = 0; k <= depth; ++k) levels_.emplace_back(k, n, atoms_);
}

double AtomicMeasure::mass(const DyadicCube& q) const {
  if (q.dim() != n_) throw InputError("measure: cube dimension mismatch");
  if (q.k < 0 || q.k > depth_) return mass_by_scan(q);
  const GenerationIndex& lvl = levels_[static_cast<std::size_t>(q.k)];
  const auto cell = lvl.find(q.j);
  return cell ? lvl.mass(*cell) : 0.0;
}

double AtomicMeasure::mass_by_scan(const DyadicCube& q) const {
  double s = 0.0;
  for (const auto& a : atoms_)
    if (q.contains(a.x)) s += a.weight;
  return s;
}

const GenerationIndex& AtomicMeasure::level(int k) const {
  if (k < 0 || k > depth_) throw InputError("measure: generation " + std::to_string(k) + " is not indexed");
  return levels_[static_cast<std::size_t>(k)];
}

AtomicMeasure AtomicMeasure::restrict(const std::function<bool(const Atom&)>& keep) const {
  std::vector<Atom> kept;
  for (const auto& a : atoms_)
    if (keep(a)) kept.push_back(a);
  return AtomicMeasure(n_, depth_, std::move(kept));
}

AtomicMeasure AtomicMeasure::reindexed(int depth) const { return AtomicMeasure(n_, depth, atoms_); }

}  // namespace conedini
