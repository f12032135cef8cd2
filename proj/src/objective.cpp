#include "scg/objective.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <utility>

namespace scg {

namespace {

void check_dim(const SmoothObjective& f, const Point& x, const char* what) {
  if (x.size() != f.dim())
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(f.dim()));
  require_finite(x, what);
}

class QuadraticObjective final : public SmoothObjective {
 public:
  explicit QuadraticObjective(Point b) : b_(std::move(b)) { require_finite(b_, "quadratic b"); }

  std::string_view kind() const override { return "quadratic"; }
  Eigen::Index dim() const override { return b_.size(); }

  double value(const Point& x) const override {
    check_dim(*this, x, "quadratic value");
    return 0.5 * (x - b_).squaredNorm();
  }

  Point gradient(const Point& x) const override {
    check_dim(*this, x, "quadratic gradient");
    return x - b_;
  }

  double lipschitz() const override { return 1.0; }
  double gradient_norm_bound(double radius) const override { return radius + b_.norm(); }

 private:
  Point b_;
};

class LeastSquaresObjective final : public SmoothObjective {
 public:
  LeastSquaresObjective(Matrix m, Point b) : m_(std::move(m)), b_(std::move(b)) {
    if (m_.rows() != b_.size()) throw DimensionError("least squares: rows of M must match size of b");
    require_finite(b_, "least squares b");
    lipschitz_ = top_gram_eigenvalue();
    mtb_norm_ = (m_.transpose() * b_).norm();
  }

  std::string_view kind() const override { return "least_squares"; }
  Eigen::Index dim() const override { return m_.cols(); }

  double value(const Point& x) const override {
    check_dim(*this, x, "least squares value");
    return 0.5 * (m_ * x - b_).squaredNorm();
  }

  Point gradient(const Point& x) const override {
    check_dim(*this, x, "least squares gradient");
    return m_.transpose() * (m_ * x - b_);
  }

  double lipschitz() const override { return lipschitz_; }
  double gradient_norm_bound(double radius) const override { return lipschitz_ * radius + mtb_norm_; }

 private:
  // lambda_max(M^T M) by power iteration, deterministic start.
  double top_gram_eigenvalue() const {
    const Eigen::Index n = m_.cols();
    if (m_.norm() == 0.0) return 0.0;
    SplitMix64 rng(0x6E16E16E1ull);
    Point v = rng.uniform_vector(n, -1.0, 1.0);
    v /= v.norm();
    double value = 0.0;
    for (int it = 0; it < 10 * static_cast<int>(m_.rows() + n); ++it) {
      Point w = m_.transpose() * (m_ * v);
      double nw = w.norm();
      if (nw == 0.0) break;
      w /= nw;
      double done = (w - v).norm();
      v = w;
      value = nw;
      if (done <= 1e-12) break;
    }
    return value;
  }

  Matrix m_;
  Point b_;
  double lipschitz_ = 0.0;
  double mtb_norm_ = 0.0;
};

class IndefiniteQuadraticObjective final : public SmoothObjective {
 public:
  IndefiniteQuadraticObjective(Matrix q_matrix, Point q_linear)
      : q_(std::move(q_matrix)), lin_(std::move(q_linear)) {
    if (q_.rows() != q_.cols()) throw DimensionError("indefinite quadratic: Q must be square");
    if (q_.rows() != lin_.size()) throw DimensionError("indefinite quadratic: q size must match Q");
    if ((q_ - q_.transpose()).lpNorm<Eigen::Infinity>() > 1e-12)
      throw ValidationError("indefinite quadratic: Q must be symmetric");
    require_finite(lin_, "indefinite quadratic q");
    Eigen::SelfAdjointEigenSolver<Matrix> es(q_, Eigen::EigenvaluesOnly);
    spectral_radius_ = std::max(std::abs(es.eigenvalues().minCoeff()), std::abs(es.eigenvalues().maxCoeff()));
  }

  std::string_view kind() const override { return "indefinite_quadratic"; }
  Eigen::Index dim() const override { return q_.rows(); }

  double value(const Point& x) const override {
    check_dim(*this, x, "indefinite quadratic value");
    return 0.5 * x.dot(q_ * x) + lin_.dot(x);
  }

  Point gradient(const Point& x) const override {
    check_dim(*this, x, "indefinite quadratic gradient");
    return q_ * x + lin_;
  }

  double lipschitz() const override { return spectral_radius_; }
  double gradient_norm_bound(double radius) const override { return spectral_radius_ * radius + lin_.norm(); }

 private:
  Matrix q_;
  Point lin_;
  double spectral_radius_ = 0.0;
};

}  // namespace

ObjectivePtr make_quadratic(Point b) { return std::make_shared<QuadraticObjective>(std::move(b)); }

ObjectivePtr make_least_squares(Matrix m, Point b) {
  return std::make_shared<LeastSquaresObjective>(std::move(m), std::move(b));
}

ObjectivePtr make_indefinite_quadratic(Matrix q_matrix, Point q_linear) {
  return std::make_shared<IndefiniteQuadraticObjective>(std::move(q_matrix), std::move(q_linear));
}

PenalizedObjective::PenalizedObjective(ObjectivePtr base, double lambda, Weights weights)
    : base_(std::move(base)), lambda_(lambda), weights_(std::move(weights)) {
  if (!base_) throw ValidationError("penalized objective: null base");
  if (lambda_ < 0.0) throw ValidationError("penalized objective: lambda must be nonnegative");
}

double PenalizedObjective::value(const ProductPoint& x) const {
  return base_->value(average(x, weights_)) + 0.5 * lambda_ * dist_diag_sq(x, weights_);
}

ProductPoint PenalizedObjective::gradient(const ProductPoint& x) const {
  const Point ax = average(x, weights_);
  const Point g = base_->gradient(ax);
  std::vector<Point> blocks;
  blocks.reserve(x.block_count());
  for (std::size_t i = 0; i < x.block_count(); ++i) blocks.push_back(g + lambda_ * (x[i] - ax));
  return ProductPoint(std::move(blocks));
}

PenalizedObjective::ShiftedPair PenalizedObjective::shifted_value(double delta, const ProductPoint& x) const {
  ShiftedPair out;
  out.direct = value(x);
  // Evaluate at lambda + delta and subtract the penalty correction; delta may
  // be any real, so the shifted evaluation is done inline.
  const double at_shifted =
      base_->value(average(x, weights_)) + 0.5 * (lambda_ + delta) * dist_diag_sq(x, weights_);
  out.shifted = at_shifted - 0.5 * delta * dist_diag_sq(x, weights_);
  return out;
}

}  // namespace scg
