#pragma once

#include "conedini/dyadic.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace conedini {

struct Atom {
  Point x;
  double weight = 1.0;
  std::string label;
};

/// Occupied cubes of one generation, sorted lexicographically, with their mass.
class GenerationIndex {
 public:
  GenerationIndex() = default;
  GenerationIndex(int k, std::size_t n, const std::vector<Atom>& atoms);

  int generation() const { return k_; }
  std::size_t size() const { return mass_.size(); }
  std::span<const Coord> coords(std::size_t cell) const { return {coords_.data() + cell * n_, n_}; }
  double mass(std::size_t cell) const { return mass_[cell]; }
  DyadicCube cube(std::size_t cell) const;
  /// Cell holding atom `a`.
  std::size_t cell_of_atom(std::size_t a) const { return atom_cell_[a]; }
  std::optional<std::size_t> find(std::span<const Coord> j) const;

 private:
  int k_ = 0;
  std::size_t n_ = 0;
  std::vector<Coord> coords_;
  std::vector<double> mass_;
  std::vector<std::size_t> atom_cell_;
};

/// A finite weighted point set with an exact dyadic mass index for
/// generations 0..depth.
class AtomicMeasure {
 public:
  AtomicMeasure(std::size_t n, int depth, std::vector<Atom> atoms);

  std::size_t ambient_dim() const { return n_; }
  int depth() const { return depth_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const Atom& atom(std::size_t i) const { return atoms_[i]; }
  double total_mass() const { return total_; }

  /// mu(Q) for the half-open cube; generations outside the index are scanned.
  double mass(const DyadicCube& q) const;
  double mass_by_scan(const DyadicCube& q) const;
  const GenerationIndex& level(int k) const;

  /// mu restricted to the atoms satisfying `keep`.
  AtomicMeasure restrict(const std::function<bool(const Atom&)>& keep) const;
  /// Same atoms, re-indexed to a different depth.
  AtomicMeasure reindexed(int depth) const;

 private:
  std::size_t n_;
  int depth_;
  std::vector<Atom> atoms_;
  double total_ = 0.0;
  std::vector<GenerationIndex> levels_;
};

}  // namespace conedini
