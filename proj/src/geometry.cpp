#include "conedini/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace conedini {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InputError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                     " vs " + std::to_string(b) + ")");
  }
}

double dot(const double* row, std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += row[i] * x[i];
  return s;
}

// Sum of squares of the rows of `rows` applied to x.
double projected_sq(std::span<const double> rows, std::span<const double> x) {
  const std::size_t n = x.size();
  double s = 0.0;
  for (std::size_t r = 0; r * n < rows.size(); ++r) {
    const double c = dot(rows.data() + r * n, x);
    s += c * c;
  }
  return s;
}

}  // namespace

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double distance(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a.size(), b.size(), "distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(std::size_t n, std::size_t m, std::vector<double> frame)
    : n_(n), m_(m), frame_(std::move(frame)) {}

Subspace Subspace::from_orthonormal(std::size_t n, const std::vector<Point>& basis) {
  const std::size_t m = basis.size();
  if (n < 2 || m < 1 || m > n - 1) {
    throw InputError("subspace: need 1 <= m <= n-1 (n=" + std::to_string(n) +
                     ", m=" + std::to_string(m) + ")");
  }
  for (const auto& b : basis) require_same_dim(b.size(), n, "subspace basis");
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += basis[a][i] * basis[b][i];
      const double want = a == b ? 1.0 : 0.0;
      if (std::abs(d - want) > 1e-12) {
        throw InputError("subspace: basis is not orthonormal to 1e-12");
      }
    }
  }

  Eigen::MatrixXd a(n, m);
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t i = 0; i < n; ++i) a(i, c) = basis[c][i];
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);

  std::vector<double> frame(n * n);
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t i = 0; i < n; ++i) frame[c * n + i] = basis[c][i];
  for (std::size_t c = m; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) frame[c * n + i] = q(i, c);
  return Subspace(n, m, std::move(frame));
}

Subspace Subspace::span_of(std::size_t n, const std::vector<Point>& vectors) {
  const std::size_t m = vectors.size();
  if (n < 2 || m < 1 || m > n - 1) {
    throw InputError("subspace: need 1 <= m <= n-1");
  }
  Eigen::MatrixXd a(n, m);
  for (std::size_t c = 0; c < m; ++c) {
    require_same_dim(vectors[c].size(), n, "subspace span");
    for (std::size_t i = 0; i < n; ++i) a(i, c) = vectors[c][i];
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t c = 0; c < m; ++c) {
    if (std::abs(r(c, c)) < 1e-12) throw InputError("subspace: spanning vectors are rank deficient");
  }
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  std::vector<double> frame(n * n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) frame[c * n + i] = q(i, c);
  return Subspace(n, m, std::move(frame));
}

Subspace Subspace::coordinate(std::size_t n, std::size_t m) {
  std::vector<Point> basis(m, Point(n, 0.0));
  for (std::size_t c = 0; c < m; ++c) basis[c][c] = 1.0;
  return from_orthonormal(n, basis);
}

std::vector<Point> Subspace::basis() const {
  std::vector<Point> out(m_);
  for (std::size_t c = 0; c < m_; ++c)
    out[c].assign(frame_.begin() + c * n_, frame_.begin() + (c + 1) * n_);
  return out;
}

std::vector<Point> Subspace::complement_basis() const {
  std::vector<Point> out(n_ - m_);
  for (std::size_t c = m_; c < n_; ++c)
    out[c - m_].assign(frame_.begin() + c * n_, frame_.begin() + (c + 1) * n_);
  return out;
}

void Subspace::check_dim(std::span<const double> x) const {
  require_same_dim(x.size(), n_, "subspace");
}

double Subspace::dist_to(std::span<const double> x) const {
  check_dim(x);
  return std::sqrt(projected_sq(complement_rows(), x));
}

double Subspace::dist_to_complement(std::span<const double> x) const {
  check_dim(x);
  return std::sqrt(projected_sq(basis_rows(), x));
}

Point Subspace::coords(std::span<const double> x) const {
  check_dim(x);
  Point v(m_);
  for (std::size_t c = 0; c < m_; ++c) v[c] = dot(frame_.data() + c * n_, x);
  return v;
}

Point Subspace::complement_coords(std::span<const double> x) const {
  check_dim(x);
  Point w(n_ - m_);
  for (std::size_t c = m_; c < n_; ++c) w[c - m_] = dot(frame_.data() + c * n_, x);
  return w;
}

Point Subspace::project(std::span<const double> x) const {
  const Point v = coords(x);
  Point out(n_, 0.0);
  for (std::size_t c = 0; c < m_; ++c)
    for (std::size_t i = 0; i < n_; ++i) out[i] += v[c] * frame_[c * n_ + i];
  return out;
}

Point Subspace::compose(std::span<const double> v, std::span<const double> w) const {
  require_same_dim(v.size(), m_, "compose (V part)");
  require_same_dim(w.size(), n_ - m_, "compose (V^perp part)");
  Point out(n_, 0.0);
  for (std::size_t c = 0; c < m_; ++c)
    for (std::size_t i = 0; i < n_; ++i) out[i] += v[c] * frame_[c * n_ + i];
  for (std::size_t c = 0; c < n_ - m_; ++c)
    for (std::size_t i = 0; i < n_; ++i) out[i] += w[c] * frame_[(m_ + c) * n_ + i];
  return out;
}

double dist_to_subspace(std::span<const double> x, const Subspace& v) { return v.dist_to(x); }

// ---------------------------------------------------------------------------
// Cone

Cone::Cone(Subspace v, double alpha) : v_(std::move(v)), alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InputError("cone: alpha must be a positive finite real");
  }
}

double Cone::margin(std::span<const double> z) const {
  return v_.dist_to(z) - alpha_ * v_.dist_to_complement(z);
}

bool Cone::contains(std::span<const double> z) const {
  return v_.dist_to(z) > alpha_ * v_.dist_to_complement(z);
}

bool in_cone(const Cone& cone, std::span<const double> apex, std::span<const double> y) {
  require_same_dim(apex.size(), y.size(), "in_cone");
  Point d(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) d[i] = y[i] - apex[i];
  return cone.contains(d);
}

// ---------------------------------------------------------------------------
// Boxes

Point Box::center() const {
  Point c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
  return c;
}

double Box::half_diagonal() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    const double h = 0.5 * (hi[i] - lo[i]);
    s += h * h;
  }
  return std::sqrt(s);
}

std::vector<Point> Box::vertices() const {
  const std::size_t n = dim();
  std::vector<Point> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Point v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1U ? hi[i] : lo[i];
    out.push_back(std::move(v));
  }
  return out;
}

bool Box::contains(std::span<const double> p) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (p[i] < lo[i] || p[i] > hi[i]) return false;
  return true;
}

Box minkowski_difference(const Box& a, const Box& b) {
  require_same_dim(a.dim(), b.dim(), "minkowski_difference");
  Box d{Point(a.dim()), Point(a.dim())};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    d.lo[i] = a.lo[i] - b.hi[i];
    d.hi[i] = a.hi[i] - b.lo[i];
  }
  return d;
}

namespace {

struct Node {
  Box box;
  int depth;
};

// Interval lower bound of |row . z| over the box.
double min_abs_linear(const double* row, const Box& box) {
  double c = 0.0;
  double rad = 0.0;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const double mid = 0.5 * (box.lo[i] + box.hi[i]);
    const double h = 0.5 * (box.hi[i] - box.lo[i]);
    c += row[i] * mid;
    rad += std::abs(row[i]) * h;
  }
  const double lo = c - rad;
  const double hi = c + rad;
  if (lo <= 0.0 && hi >= 0.0) return 0.0;
  return std::min(std::abs(lo), std::abs(hi));
}

}  // namespace

ConeBoxResult box_meets_cone(const Box& box, const Cone& cone, const BranchBoundLimits& limits) {
  const std::size_t n = cone.ambient_dim();
  require_same_dim(box.dim(), n, "box_meets_cone");
  const Subspace& v = cone.subspace();
  const std::span<const double> brows = v.basis_rows();
  const std::span<const double> crows = v.complement_rows();
  const std::size_t m = v.dim();
  const double alpha = cone.alpha();

  ConeBoxResult result;
  std::vector<Node> stack;
  stack.push_back({box, 0});
  Point corner(n);

  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    ++result.nodes;

    // Lower bound on sup g: values at the corners and the center.
    // Upper bound: dist(., V) is convex so its max sits at a corner, and
    // dist(., V^perp) is bounded below componentwise.
    double best = -std::numeric_limits<double>::infinity();
    double max_far = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      for (std::size_t i = 0; i < n; ++i) corner[i] = (mask >> i) & 1U ? node.box.hi[i] : node.box.lo[i];
      const double far = std::sqrt(projected_sq(crows, corner));
      const double near = std::sqrt(projected_sq(brows, corner));
      max_far = std::max(max_far, far);
      best = std::max(best, far - alpha * near);
    }
    const Point c = node.box.center();
    best = std::max(best, cone.margin(c));
    if (best > 0.0) {
      result.incidence = Incidence::Meets;
      return result;
    }

    double near_sq = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      const double t = min_abs_linear(brows.data() + r * n, node.box);
      near_sq += t * t;
    }
    const double upper = max_far - alpha * std::sqrt(near_sq);
    if (upper <= -limits.tol) continue;

    if (upper - best <= limits.tol || node.depth >= limits.max_depth ||
        result.nodes >= limits.max_nodes) {
      result.incidence = Incidence::Meets;
      result.conservative = true;
      return result;
    }

    std::size_t axis = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (node.box.hi[i] - node.box.lo[i] > node.box.hi[axis] - node.box.lo[axis]) axis = i;
    const double mid = 0.5 * (node.box.lo[axis] + node.box.hi[axis]);
    Node upper_half{node.box, node.depth + 1};
    upper_half.box.lo[axis] = mid;
    node.box.hi[axis] = mid;
    ++node.depth;
    stack.push_back(std::move(upper_half));
    stack.push_back(std::move(node));
  }
  result.incidence = Incidence::Disjoint;
  return result;
}

// ---------------------------------------------------------------------------
// gap / excess / Hausdorff

namespace {

void require_nonempty(const PointSet& s, const char* what) {
  if (s.empty()) throw InputError(std::string(what) + ": empty point set");
}

double min_dist_to_set(std::span<const double> p, const PointSet& t) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : t) best = std::min(best, distance(p, q));
  return best;
}

}  // namespace

double gap(const PointSet& s, const PointSet& t) {
  require_nonempty(s, "gap");
  require_nonempty(t, "gap");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : s) best = std::min(best, min_dist_to_set(p, t));
  return best;
}

double gap(const Box& s, std::span<const double> p) {
  require_same_dim(s.dim(), p.size(), "gap");
  double sq = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    double d = 0.0;
    if (p[i] < s.lo[i]) d = s.lo[i] - p[i];
    else if (p[i] > s.hi[i]) d = p[i] - s.hi[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

double gap(const Box& s, const Box& t) {
  require_same_dim(s.dim(), t.dim(), "gap");
  double sq = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    double d = 0.0;
    if (t.lo[i] > s.hi[i]) d = t.lo[i] - s.hi[i];
    else if (s.lo[i] > t.hi[i]) d = s.lo[i] - t.hi[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

double gap(const Box& s, const PointSet& t) {
  require_nonempty(t, "gap");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : t) best = std::min(best, gap(s, p));
  return best;
}

double excess(const PointSet& s, const PointSet& t) {
  if (s.empty()) return 0.0;
  require_nonempty(t, "excess");
  double worst = 0.0;
  for (const auto& p : s) worst = std::max(worst, min_dist_to_set(p, t));
  return worst;
}

double excess(const Box& s, const Box& t) {
  // Distance to a convex set is convex, so the sup over s is at a corner.
  double worst = 0.0;
  for (const auto& v : s.vertices()) worst = std::max(worst, gap(t, v));
  return worst;
}

double hausdorff(const PointSet& s, const PointSet& t) {
  require_nonempty(s, "hausdorff");
  require_nonempty(t, "hausdorff");
  return std::max(excess(s, t), excess(t, s));
}

double hausdorff(const Box& s, const Box& t) { return std::max(excess(s, t), excess(t, s)); }

}  // namespace conedini
