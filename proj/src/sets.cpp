#include "scg/sets.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace scg {

Point ConstraintSet::project(const Point&) const {
  throw CapabilityError(std::string("projection not available for set kind '") + std::string(kind()) + "'");
}

void ConstraintSet::bounding_box(Point&, Point&) const {
  throw CapabilityError(std::string("bounding box not available for set kind '") + std::string(kind()) + "'");
}

void ConstraintSet::check_dim(const Point& x, const char* what) const {
  if (x.size() != dim())
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(dim()) + ", got " +
                         std::to_string(x.size()));
  require_finite(x, what);
}

namespace {

// ---- matrix flattening (row-major, shape carried by the set) ----

Matrix unflatten(const Point& x, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = x[r * cols + c];
  return m;
}

Point flatten(const Matrix& m) {
  Point x(m.rows() * m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) x[r * m.cols() + c] = m(r, c);
  return x;
}

// ---- power iteration ----
//
// Spectral oracles are over-resolved (tolerance 1e-10) because the parameter
// schedules assume exact oracles. Starts are fixed per dimension so every
// call is a pure function of its direction.

Point deterministic_start(Eigen::Index n) {
  SplitMix64 rng(0x5CA1AB1E0DDF00Dull);
  Point v = rng.uniform_vector(n, -1.0, 1.0);
  double nv = v.norm();
  if (nv == 0.0) {
    v.setZero();
    v[0] = 1.0;
    return v;
  }
  return v / nv;
}

constexpr double kPowerTol = 1e-10;

// Top singular triple of C via power iteration on C^T C.
struct SingularTriple {
  double sigma = 0.0;
  Point u, v;
};

SingularTriple top_singular_triple(const Matrix& C) {
  const Eigen::Index rows = C.rows(), cols = C.cols();
  SingularTriple out;
  out.u = Point::Zero(rows);
  out.v = Point::Zero(cols);
  out.u[0] = 1.0;
  out.v[0] = 1.0;
  if (C.norm() == 0.0) return out;

  Point v = deterministic_start(cols);
  const int max_iter = static_cast<int>(10 * (rows + cols));
  for (int it = 0; it < max_iter; ++it) {
    Point w = C.transpose() * (C * v);
    double nw = w.norm();
    if (nw == 0.0) {
      // v fell in the null space; restart orthogonally to it.
      Point r = deterministic_start(cols);
      r -= r.dot(v) * v;
      double nr = r.norm();
      v = (nr > 0.0) ? Point(r / nr) : v;
      continue;
    }
    w /= nw;
    const bool done = (w - v).norm() <= kPowerTol;
    v = w;
    if (done) break;
  }
  double sigma = (C * v).norm();
  if (sigma == 0.0) return out;
  out.sigma = sigma;
  out.v = v;
  out.u = (C * v) / sigma;
  return out;
}

// Minimal eigenpair of a symmetric S via power iteration on mu*I - S with
// the Frobenius shift mu = ||S||_F. When the bottom of the spectrum nearly
// ties, the eigenvector rotates slowly while its Rayleigh value (which is
// monotone for a psd operator) is already converged, so iteration also stops
// once the value stalls.
struct EigenPairResult {
  double value = 0.0;
  Point vector;
};

EigenPairResult min_eigen_pair(const Matrix& S) {
  const Eigen::Index n = S.rows();
  EigenPairResult out;
  out.vector = Point::Zero(n);
  out.vector[0] = 1.0;
  const double mu = S.norm();
  if (mu == 0.0) return out;

  Point v = deterministic_start(n);
  const int max_iter = std::max(static_cast<int>(10 * (n + n)), 20000);
  double rho_prev = std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (int it = 0; it < max_iter; ++it) {
    Point w = mu * v - S * v;
    double nw = w.norm();
    if (nw == 0.0) {
      Point r = deterministic_start(n);
      r -= r.dot(v) * v;
      double nr = r.norm();
      v = (nr > 0.0) ? Point(r / nr) : v;
      continue;
    }
    // Rayleigh value of S at the current vector, reusing w = (mu I - S) v.
    const double rho = mu - v.dot(w);
    stalled = (std::abs(rho - rho_prev) <= 1e-13 * std::max(1.0, std::abs(rho))) ? stalled + 1 : 0;
    rho_prev = rho;
    w /= nw;
    const bool done = (w - v).norm() <= kPowerTol;
    v = w;
    if (done || stalled >= 3) break;
  }
  out.vector = v;
  out.value = v.dot(S * v);
  return out;
}

// Dirichlet(1,...,1) weights via normalized exponentials.
std::vector<double> dirichlet_weights(SplitMix64& rng, std::size_t k) {
  std::vector<double> a(k);
  double sum = 0.0;
  for (double& x : a) {
    x = -std::log(1.0 - rng.uniform());
    sum += x;
  }
  for (double& x : a) x /= sum;
  return a;
}

// Projection of y onto the unit simplex (sort-based).
Point project_unit_simplex(const Point& y) {
  const Eigen::Index n = y.size();
  std::vector<double> u(y.data(), y.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  Eigen::Index rho = 0;
  double running = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    running += u[j];
    double t = (running - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) {
      rho = j + 1;
      css = running;
    }
  }
  theta = (css - 1.0) / static_cast<double>(rho);
  Point x(n);
  for (Eigen::Index k = 0; k < n; ++k) x[k] = std::max(y[k] - theta, 0.0);
  return x;
}

// ---- kinds ----

class SingletonSet final : public ConstraintSet {
 public:
  explicit SingletonSet(Point z) : z_(std::move(z)) { require_finite(z_, "singleton"); }

  std::string_view kind() const override { return "singleton"; }
  Eigen::Index dim() const override { return z_.size(); }
  double diameter() const override { return 0.0; }
  double norm_bound() const override { return z_.norm(); }

  Point lmo(const Point& c) const override {
    check_dim(c, "singleton lmo");
    return z_;
  }

  bool membership(const Point& x, double tol) const override {
    check_dim(x, "singleton membership");
    return (x - z_).lpNorm<Eigen::Infinity>() <= tol;
  }

  bool supports_projection() const override { return true; }
  Point project(const Point& x) const override {
    check_dim(x, "singleton project");
    return z_;
  }

  Point random_feasible(std::uint64_t) const override { return z_; }

  void bounding_box(Point& lo, Point& hi) const override {
    lo = z_;
    hi = z_;
  }

 private:
  Point z_;
};

class BoxSet final : public ConstraintSet {
 public:
  BoxSet(Point lower, Point upper) : l_(std::move(lower)), u_(std::move(upper)) {
    if (l_.size() != u_.size()) throw DimensionError("box: bound dimensions differ");
    require_finite(l_, "box lower");
    require_finite(u_, "box upper");
    for (Eigen::Index k = 0; k < l_.size(); ++k)
      if (l_[k] > u_[k]) throw ValidationError("box: lower bound exceeds upper bound");
  }

  std::string_view kind() const override { return "box"; }
  Eigen::Index dim() const override { return l_.size(); }
  double diameter() const override { return (u_ - l_).norm(); }
  double norm_bound() const override {
    double s = 0.0;
    for (Eigen::Index k = 0; k < l_.size(); ++k) s += std::max(l_[k] * l_[k], u_[k] * u_[k]);
    return std::sqrt(s);
  }

  Point lmo(const Point& c) const override {
    check_dim(c, "box lmo");
    Point v(dim());
    for (Eigen::Index k = 0; k < c.size(); ++k) v[k] = (c[k] >= 0.0) ? l_[k] : u_[k];
    return v;
  }

  bool membership(const Point& x, double tol) const override {
    check_dim(x, "box membership");
    for (Eigen::Index k = 0; k < x.size(); ++k)
      if (x[k] < l_[k] - tol || x[k] > u_[k] + tol) return false;
    return true;
  }

  bool supports_projection() const override { return true; }
  Point project(const Point& x) const override {
    check_dim(x, "box project");
    return x.cwiseMax(l_).cwiseMin(u_);
  }

  Point random_feasible(std::uint64_t seed) const override {
    SplitMix64 rng(seed ^ 0xB0B0B0B0ull);
    Point v(dim());
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = rng.uniform(l_[k], u_[k]);
    return v;
  }

  void bounding_box(Point& lo, Point& hi) const override {
    lo = l_;
    hi = u_;
  }

 private:
  Point l_, u_;
};

class L1BallSet final : public ConstraintSet {
 public:
  L1BallSet(double radius, Point center) : tau_(radius), a_(std::move(center)) {
    if (!(tau_ > 0.0)) throw ValidationError("l1 ball: radius must be positive");
    require_finite(a_, "l1 ball center");
  }

  std::string_view kind() const override { return "l1_ball"; }
  Eigen::Index dim() const override { return a_.size(); }
  double diameter() const override { return 2.0 * tau_; }
  double norm_bound() const override { return a_.norm() + tau_; }

  Point lmo(const Point& c) const override {
    check_dim(c, "l1 ball lmo");
    Eigen::Index best = 0;
    double best_abs = std::abs(c[0]);
    for (Eigen::Index k = 1; k < c.size(); ++k) {
      if (std::abs(c[k]) > best_abs) {
        best_abs = std::abs(c[k]);
        best = k;
      }
    }
    Point v = a_;
    v[best] += (c[best] < 0.0) ? tau_ : -tau_;
    return v;
  }

  bool membership(const Point& x, double tol) const override {
    check_dim(x, "l1 ball membership");
    return (x - a_).lpNorm<1>() <= tau_ + tol;
  }

  bool supports_projection() const override { return true; }
  Point project(const Point& x) const override {
    check_dim(x, "l1 ball project");
    Point d = x - a_;
    if (d.lpNorm<1>() <= tau_) return x;
    // soft threshold at the level that lands on the radius
    const Eigen::Index n = d.size();
    std::vector<double> mag(n);
    for (Eigen::Index k = 0; k < n; ++k) mag[k] = std::abs(d[k]);
    std::sort(mag.begin(), mag.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      css += mag[j];
      double t = (css - tau_) / static_cast<double>(j + 1);
      if (mag[j] - t > 0.0) theta = t;
    }
    Point p(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      double m = std::max(std::abs(d[k]) - theta, 0.0);
      p[k] = a_[k] + ((d[k] < 0.0) ? -m : m);
    }
    return p;
  }

  Point random_feasible(std::uint64_t seed) const override {
    SplitMix64 rng(seed ^ 0x11BA11ull);
    auto w = dirichlet_weights(rng, static_cast<std::size_t>(dim()));
    double scale = rng.uniform();
    Point v = a_;
    for (Eigen::Index k = 0; k < dim(); ++k) {
      double sign = (rng.uniform() < 0.5) ? -1.0 : 1.0;
      v[k] += sign * scale * tau_ * w[static_cast<std::size_t>(k)];
    }
    return v;
  }

  void bounding_box(Point& lo, Point& hi) const override {
    lo = a_.array() - tau_;
    hi = a_.array() + tau_;
  }

 private:
  double tau_;
  Point a_;
};

class SimplexSet final : public ConstraintSet {
 public:
  explicit SimplexSet(Eigen::Index n) : n_(n) {
    if (n_ < 1) throw ValidationError("simplex: dimension must be positive");
  }

  std::string_view kind() const override { return "simplex"; }
  Eigen::Index dim() const override { return n_; }
  double diameter() const override { return n_ > 1 ? std::sqrt(2.0) : 0.0; }
  double norm_bound() const override { return 1.0; }

  Point lmo(const Point& c) const override {
    check_dim(c, "simplex lmo");
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < n_; ++k)
      if (c[k] < c[best]) best = k;
    Point v = Point::Zero(n_);
    v[best] = 1.0;
    return v;
  }

  bool membership(const Point& x, double tol) const override {
    check_dim(x, "simplex membership");
    if (x.minCoeff() < -tol) return false;
    return std::abs(x.sum() - 1.0) <= tol;
  }

  bool supports_projection() const override { return true; }
  Point project(const Point& x) const override {
    check_dim(x, "simplex project");
    return project_unit_simplex(x);
  }

  Point random_feasible(std::uint64_t seed) const override {
    SplitMix64 rng(seed ^ 0x51319ull);
    auto w = dirichlet_weights(rng, static_cast<std::size_t>(n_));
    Point v(n_);
    for (Eigen::Index k = 0; k < n_; ++k) v[k] = w[static_cast<std::size_t>(k)];
    return v;
  }

  void bounding_box(Point& lo, Point& hi) const override {
    lo = Point::Zero(n_);
    hi = Point::Ones(n_);
  }

 private:
  Eigen::Index n_;
};

class EuclideanBallSet final : public ConstraintSet {
 public:
  EuclideanBallSet(double radius, Point center) : tau_(radius), a_(std::move(center)) {
    if (!(tau_ > 0.0)) throw ValidationError("euclidean ball: radius must be positive");
    require_finite(a_, "euclidean ball center");
  }

  std::string_view kind() const override { return "euclidean_ball"; }
  Eigen::Index dim() const override { return a_.size(); }
  double diameter() const override { return 2.0 * tau_; }
  double norm_bound() const override { return a_.norm() + tau_; }

  Point lmo(const Point& c) const override {
    check_dim(c, "euclidean ball lmo");
    double nc = c.norm();
    if (nc == 0.0) {
      Point v = a_;
      v[0] += tau_;
      return v;
    }
    return a_ - (tau_ / nc) * c;
  }

  bool membership(const Point& x, double tol) const override {
    check_dim(x, "euclidean ball membership");
    return (x - a_).norm() <= tau_ + tol;
  }

  bool supports_projection() const override { return true; }
  Point project(const Point& x) const override {
    check_dim(x, "euclidean ball project");
    Point d = x - a_;
    double nd = d.norm();
    if (nd <= tau_) return x;
    return a_ + (tau_ / nd) * d;
  }

  Point random_feasible(std::uint64_t seed) const override {
    SplitMix64 rng(seed ^ 0xBA11ull);
    Point g = rng.normal_vector(dim());
    double ng = g.norm();
    if (ng == 0.0) return a_;
    double r = tau_ * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim()));
    return a_ + (r / ng) * g;
  }

  void bounding_box(Point& lo, Point& hi) const override {
    lo = a_.array() - tau_;
    hi = a_.array() + tau_;
  }

 private:
  double tau_;
  Point a_;
};

class NuclearNormBallSet final : public ConstraintSet {
 public:
  NuclearNormBallSet(double radius, Eigen::Index rows, Eigen::Index cols)
      : tau_(radius), rows_(rows), cols_(cols) {
    if (!(tau_ > 0.0)) throw ValidationError("nuclear ball: radius must be positive");
    if (rows_ < 1 || cols_ < 1) throw ValidationError("nuclear ball: invalid shape");
  }

  std::string_view kind() const override { return "nuclear_ball"; }
  Eigen::Index dim() const override { return rows_ * cols_; }
  double diameter() const override { return 2.0 * tau_; }
  double norm_bound() const override { return tau_; }

  Point lmo(const Point& c) const override {
    check_dim(c, "nuclear ball lmo");
    Matrix C = unflatten(c, rows_, cols_);
    SingularTriple t = top_singular_triple(C);
    if (t.sigma == 0.0) {
      Matrix Z = Matrix::Zero(rows_, cols_);
      Z(0, 0) = -tau_;
      return flatten(Z);
    }
    Matrix Z = -tau_ * t.u * t.v.transpose();
    return flatten(Z);
  }

  bool membership(const Point& x, double tol) const override {
    check_dim(x, "nuclear ball membership");
    Matrix X = unflatten(x, rows_, cols_);
    Eigen::JacobiSVD<Matrix> svd(X);
    return svd.singularValues().sum() <= tau_ + tol;
  }

  Point random_feasible(std::uint64_t seed) const override {
    SplitMix64 rng(seed ^ 0x9C1Eull);
    const std::size_t k = 3;
    auto w = dirichlet_weights(rng, k);
    Matrix Z = Matrix::Zero(rows_, cols_);
    for (std::size_t j = 0; j < k; ++j) {
      Point u = rng.normal_vector(rows_), v = rng.normal_vector(cols_);
      double nu = u.norm(), nv = v.norm();
      if (nu == 0.0 || nv == 0.0) continue;
      Z += (w[j] * tau_ * rng.uniform()) * (u / nu) * (v / nv).transpose();
    }
    return flatten(Z);
  }

 private:
  double tau_;
  Eigen::Index rows_, cols_;
};

class SpectrahedronSet final : public ConstraintSet {
 public:
  explicit SpectrahedronSet(Eigen::Index order) : n_(order) {
    if (n_ < 1) throw ValidationError("spectrahedron: order must be positive");
  }

  std::string_view kind() const override { return "spectrahedron"; }
  Eigen::Index dim() const override { return n_ * n_; }
  double diameter() const override { return std::sqrt(2.0); }
  double norm_bound() const override { return 1.0; }

  Point lmo(const Point& c) const override {
    check_dim(c, "spectrahedron lmo");
    Matrix M = unflatten(c, n_, n_);
    Matrix S = 0.5 * (M + M.transpose());
    EigenPairResult p = min_eigen_pair(S);
    Matrix Z = p.vector * p.vector.transpose();
    return flatten(Z);
  }

  bool membership(const Point& x, double tol) const override {
    check_dim(x, "spectrahedron membership");
    Matrix X = unflatten(x, n_, n_);
    if ((X - X.transpose()).lpNorm<Eigen::Infinity>() > tol) return false;
    if (std::abs(X.trace() - 1.0) > tol) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (X + X.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
  }

  Point random_feasible(std::uint64_t seed) const override {
    SplitMix64 rng(seed ^ 0x5BECull);
    const std::size_t k = 3;
    auto w = dirichlet_weights(rng, k);
    Matrix Z = Matrix::Zero(n_, n_);
    for (std::size_t j = 0; j < k; ++j) {
      Point v = rng.normal_vector(n_);
      double nv = v.norm();
      if (nv == 0.0) {
        v.setZero();
        v[0] = 1.0;
        nv = 1.0;
      }
      v /= nv;
      Z += w[j] * v * v.transpose();
    }
    return flatten(Z);
  }

 private:
  Eigen::Index n_;
};

class BirkhoffSet final : public ConstraintSet {
 public:
  explicit BirkhoffSet(Eigen::Index order) : n_(order) {
    if (n_ < 1) throw ValidationError("birkhoff: order must be positive");
  }

  std::string_view kind() const override { return "birkhoff"; }
  Eigen::Index dim() const override { return n_ * n_; }
  double diameter() const override { return std::sqrt(2.0 * static_cast<double>(n_)); }
  double norm_bound() const override { return std::sqrt(static_cast<double>(n_)); }

  Point lmo(const Point& c) const override {
    check_dim(c, "birkhoff lmo");
    Matrix cost = unflatten(c, n_, n_);
    std::vector<int> col = solve_assignment(cost);
    Matrix P = Matrix::Zero(n_, n_);
    for (Eigen::Index i = 0; i < n_; ++i) P(i, col[static_cast<std::size_t>(i)]) = 1.0;
    return flatten(P);
  }

  bool membership(const Point& x, double tol) const override {
    check_dim(x, "birkhoff membership");
    Matrix X = unflatten(x, n_, n_);
    if (X.minCoeff() < -tol) return false;
    for (Eigen::Index i = 0; i < n_; ++i) {
      if (std::abs(X.row(i).sum() - 1.0) > tol) return false;
      if (std::abs(X.col(i).sum() - 1.0) > tol) return false;
    }
    return true;
  }

  Point random_feasible(std::uint64_t seed) const override {
    SplitMix64 rng(seed ^ 0xB14Cull);
    const std::size_t k = 4;
    auto w = dirichlet_weights(rng, k);
    Matrix Z = Matrix::Zero(n_, n_);
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n_));
    for (std::size_t j = 0; j < k; ++j) {
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = perm.size(); i > 1; --i) {
        std::size_t r = static_cast<std::size_t>(rng.next() % i);
        std::swap(perm[i - 1], perm[r]);
      }
      for (Eigen::Index i = 0; i < n_; ++i) Z(i, perm[static_cast<std::size_t>(i)]) += w[j];
    }
    return flatten(Z);
  }

 private:
  Eigen::Index n_;
};

}  // namespace

std::vector<int> solve_assignment(const Matrix& cost) {
  if (cost.rows() != cost.cols() || cost.rows() < 1) throw DimensionError("assignment: cost matrix must be square");
  const int n = static_cast<int>(cost.rows());
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Shortest augmenting path with dual potentials; p[j] is the row matched to
  // column j (1-based, 0 = unmatched virtual column).
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0), v(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<int> p(static_cast<std::size_t>(n) + 1, 0), way(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(n) + 1, kInf);
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      int i0 = p[static_cast<std::size_t>(j0)], j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<std::size_t>(j0)] != 0);
    do {
      int j1 = way[static_cast<std::size_t>(j0)];
      p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(static_cast<std::size_t>(n), 0);
  for (int j = 1; j <= n; ++j)
    if (p[static_cast<std::size_t>(j)] != 0) row_to_col[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
  return row_to_col;
}

SetPtr make_singleton(Point z) { return std::make_shared<SingletonSet>(std::move(z)); }
SetPtr make_box(Point lower, Point upper) { return std::make_shared<BoxSet>(std::move(lower), std::move(upper)); }
SetPtr make_l1_ball(double radius, Point center) {
  return std::make_shared<L1BallSet>(radius, std::move(center));
}
SetPtr make_simplex(Eigen::Index n) { return std::make_shared<SimplexSet>(n); }
SetPtr make_euclidean_ball(double radius, Point center) {
  return std::make_shared<EuclideanBallSet>(radius, std::move(center));
}
SetPtr make_nuclear_ball(double radius, Eigen::Index rows, Eigen::Index cols) {
  return std::make_shared<NuclearNormBallSet>(radius, rows, cols);
}
SetPtr make_spectrahedron(Eigen::Index order) { return std::make_shared<SpectrahedronSet>(order); }
SetPtr make_birkhoff(Eigen::Index order) { return std::make_shared<BirkhoffSet>(order); }

ProductConstraint::ProductConstraint(std::vector<SetPtr> sets, Weights weights)
    : sets_(std::move(sets)), weights_(std::move(weights)) {
  if (sets_.empty()) throw ValidationError("product constraint: need at least one set");
  if (sets_.size() != weights_.count())
    throw ValidationError("product constraint: set count does not match weight count");
  const Eigen::Index n = sets_.front()->dim();
  for (const SetPtr& s : sets_) {
    if (!s) throw ValidationError("product constraint: null set");
    if (s->dim() != n) throw DimensionError("product constraint: sets must share one dimension");
  }
}

ProductPoint ProductConstraint::lmo(const ProductPoint& direction) const {
  if (direction.block_count() != count())
    throw DimensionError("product lmo: block count does not match set count");
  std::vector<Point> blocks;
  blocks.reserve(count());
  for (std::size_t i = 0; i < count(); ++i) blocks.push_back(sets_[i]->lmo(direction[i]));
  return ProductPoint(std::move(blocks));
}

bool ProductConstraint::membership(const ProductPoint& x, double tol) const {
  if (x.block_count() != count()) throw DimensionError("product membership: block count mismatch");
  for (std::size_t i = 0; i < count(); ++i)
    if (!sets_[i]->membership(x[i], tol)) return false;
  return true;
}

ProductPoint ProductConstraint::random_feasible(std::uint64_t seed) const {
  std::vector<Point> blocks;
  blocks.reserve(count());
  for (std::size_t i = 0; i < count(); ++i) blocks.push_back(sets_[i]->random_feasible(seed + 0x9E37 * (i + 1)));
  return ProductPoint(std::move(blocks));
}

double ProductConstraint::weighted_diameter_sq() const {
  double out = 0.0;
  for (std::size_t i = 0; i < count(); ++i) {
    double r = sets_[i]->diameter();
    out += weights_[i] * r * r;
  }
  return out;
}

double ProductConstraint::weighted_diameter() const {
  double out = 0.0;
  for (std::size_t i = 0; i < count(); ++i) out += weights_[i] * sets_[i]->diameter();
  return out;
}

double ProductConstraint::minkowski_norm_bound() const {
  double out = 0.0;
  for (std::size_t i = 0; i < count(); ++i) out += weights_[i] * sets_[i]->norm_bound();
  return out;
}

}  // namespace scg
