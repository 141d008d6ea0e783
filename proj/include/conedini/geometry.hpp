#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace conedini {

/// Raised for malformed caller input (dimension mismatch, empty sets, bad files).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computed result fails a contract it is supposed to satisfy.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using Point = std::vector<double>;

double norm(std::span<const double> x);
double distance(std::span<const double> a, std::span<const double> b);

/// An m-dimensional linear subspace V of R^n together with an orthonormal
/// basis of V and of its orthogonal complement.
class Subspace {
 public:
  /// Validates that `basis` is orthonormal to 1e-12.
  static Subspace from_orthonormal(std::size_t n, const std::vector<Point>& basis);
  /// Orthonormalizes arbitrary spanning vectors (Householder QR).
  static Subspace span_of(std::size_t n, const std::vector<Point>& vectors);
  /// span(e_1, ..., e_m).
  static Subspace coordinate(std::size_t n, std::size_t m);

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return m_; }

  std::vector<Point> basis() const;
  std::vector<Point> complement_basis() const;

  /// dist(x, V)
  double dist_to(std::span<const double> x) const;
  /// dist(x, V^perp)
  double dist_to_complement(std::span<const double> x) const;
  /// Orthogonal projection P_V x.
  Point project(std::span<const double> x) const;
  /// Coordinates of P_V x in the basis of V (length m).
  Point coords(std::span<const double> x) const;
  /// Coordinates of x in the basis of V^perp (length n - m).
  Point complement_coords(std::span<const double> x) const;
  /// Inverse of the split x -> (coords, complement_coords).
  Point compose(std::span<const double> v, std::span<const double> w) const;

  // Row-major rows of length n: basis rows first, then complement rows.
  std::span<const double> basis_rows() const { return {frame_.data(), m_ * n_}; }
  std::span<const double> complement_rows() const {
    return {frame_.data() + m_ * n_, (n_ - m_) * n_};
  }

 private:
  Subspace(std::size_t n, std::size_t m, std::vector<double> frame);
  void check_dim(std::span<const double> x) const;

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<double> frame_;
};

/// The bad cone X(V, alpha) = { z : dist(z, V) > alpha * dist(z, V^perp) }.
class Cone {
 public:
  Cone(Subspace v, double alpha);

  const Subspace& subspace() const { return v_; }
  double alpha() const { return alpha_; }
  std::size_t ambient_dim() const { return v_.ambient_dim(); }

  /// g(z) = dist(z, V) - alpha * dist(z, V^perp); z is in the cone iff g(z) > 0.
  double margin(std::span<const double> z) const;
  /// Membership of z in the cone centered at the origin.
  bool contains(std::span<const double> z) const;

 private:
  Subspace v_;
  double alpha_;
};

double dist_to_subspace(std::span<const double> x, const Subspace& v);

/// y in X_apex = apex + X.
bool in_cone(const Cone& cone, std::span<const double> apex, std::span<const double> y);

/// Closed axis-aligned box.
struct Box {
  Point lo;
  Point hi;

  std::size_t dim() const { return lo.size(); }
  Point center() const;
  double half_diagonal() const;
  /// 2^n corner points.
  std::vector<Point> vertices() const;
  bool contains(std::span<const double> p) const;
};

/// Minkowski difference {a - b : a in A, b in B}.
Box minkowski_difference(const Box& a, const Box& b);

enum class Incidence { Disjoint, Meets };

struct ConeBoxResult {
  Incidence incidence = Incidence::Disjoint;
  /// Set when Meets was returned without a certified interior point.
  bool conservative = false;
  std::size_t nodes = 0;
};

struct BranchBoundLimits {
  double tol = 1e-9;
  int max_depth = 40;
  std::size_t max_nodes = 4096;
};

/// Decides whether the closed box meets the open cone (origin apex) by
/// branch and bound on g. Meets is certified by a point with g > 0, Disjoint
/// by sup g <= -tol; anything in between is reported as a conservative Meets.
ConeBoxResult box_meets_cone(const Box& box, const Cone& cone,
                             const BranchBoundLimits& limits = {});

using PointSet = std::vector<Point>;

/// inf |s - t|. Throws InputError on empty input.
double gap(const PointSet& s, const PointSet& t);
double gap(const Box& s, const Box& t);
double gap(const Box& s, const PointSet& t);
/// Distance from a point to a closed box.
double gap(const Box& s, std::span<const double> p);

/// sup_{s in S} inf_{t in T} |s - t|, with excess(empty, T) = 0.
double excess(const PointSet& s, const PointSet& t);
double excess(const Box& s, const Box& t);
double hausdorff(const PointSet& s, const PointSet& t);
double hausdorff(const Box& s, const Box& t);

}  // namespace conedini
