#ifndef SCG_OBJECTIVE_HPP
#define SCG_OBJECTIVE_HPP

#include <memory>
#include <string_view>

#include "scg/common.hpp"
#include "scg/space.hpp"

namespace scg {

// Smooth objective on the base space. `lipschitz` is an upper bound on the
// gradient Lipschitz constant, valid on the Minkowski sum of the weighted
// sets; the schedules consume it as a constant, there is no line search.
class SmoothObjective {
 public:
  virtual ~SmoothObjective() = default;

  virtual std::string_view kind() const = 0;
  virtual Eigen::Index dim() const = 0;
  virtual double value(const Point& x) const = 0;
  virtual Point gradient(const Point& x) const = 0;
  virtual double lipschitz() const = 0;

  // Upper bound on sup ||grad f|| over the ball of the given radius.
  virtual double gradient_norm_bound(double radius) const = 0;
};

using ObjectivePtr = std::shared_ptr<const SmoothObjective>;

// (1/2)||x - b||^2, gradient Lipschitz constant 1.
ObjectivePtr make_quadratic(Point b);

// (1/2)||M x - b||^2; the Lipschitz constant lambda_max(M^T M) is resolved by
// power iteration at construction.
ObjectivePtr make_least_squares(Matrix m, Point b);

// (1/2) x^T Q x + q^T x with symmetric (typically indefinite) Q; Lipschitz
// constant is the spectral radius of Q.
ObjectivePtr make_indefinite_quadratic(Matrix q_matrix, Point q_linear);

// The penalized product-space objective
//   F_lambda(x) = f(average(x)) + (lambda/2) dist_diag_sq(x),
// smooth with constant lipschitz(f) + lambda. Gradients are expressed in the
// weighted inner product: block i equals grad f(average(x)) + lambda (x^i -
// average(x)).
class PenalizedObjective {
 public:
  PenalizedObjective(ObjectivePtr base, double lambda, Weights weights);

  double lambda() const { return lambda_; }
  double smoothness() const { return base_->lipschitz() + lambda_; }
  const SmoothObjective& base() const { return *base_; }
  const Weights& weights() const { return weights_; }

  double value(const ProductPoint& x) const;
  ProductPoint gradient(const ProductPoint& x) const;

  // Both routes of the penalty-shift identity: evaluating at lambda directly,
  // and evaluating at lambda + delta minus the explicit penalty correction.
  struct ShiftedPair {
    double direct;
    double shifted;
  };
  ShiftedPair shifted_value(double delta, const ProductPoint& x) const;

 private:
  ObjectivePtr base_;
  double lambda_;
  Weights weights_;
};

}  // namespace scg

#endif  // SCG_OBJECTIVE_HPP
