#ifndef SCG_SPACE_HPP
#define SCG_SPACE_HPP

#include <cstddef>
#include <vector>

#include "scg/common.hpp"

namespace scg {

// Convex weights over the blocks of the product space. Each weight lies in
// (0, 1] and they sum to one within 1e-12; anything else is rejected rather
// than renormalized.
class Weights {
 public:
  explicit Weights(std::vector<double> omega);

  static Weights uniform(std::size_t m);

  std::size_t count() const { return omega_.size(); }
  double operator[](std::size_t i) const { return omega_[i]; }
  const std::vector<double>& values() const { return omega_; }

 private:
  std::vector<double> omega_;
};

// A point of the product space: m blocks of equal dimension. Weights are not
// stored here; they belong to the enclosing problem.
class ProductPoint {
 public:
  ProductPoint() = default;
  explicit ProductPoint(std::vector<Point> blocks);

  static ProductPoint zero(std::size_t m, Eigen::Index dim);

  std::size_t block_count() const { return blocks_.size(); }
  Eigen::Index dim() const { return blocks_.empty() ? 0 : blocks_.front().size(); }

  Point& operator[](std::size_t i) { return blocks_[i]; }
  const Point& operator[](std::size_t i) const { return blocks_[i]; }

  const std::vector<Point>& blocks() const { return blocks_; }

 private:
  std::vector<Point> blocks_;
};

// Block averaging operator: x -> sum_i w_i x^i.
Point average(const ProductPoint& x, const Weights& w);

// Adjoint of the averaging operator: repeats x in every block. The result
// lies on the diagonal subspace.
ProductPoint lift(const Point& x, std::size_t m);

// Projection onto the diagonal subspace, lift(average(x)). Idempotent.
ProductPoint proj_diag(const ProductPoint& x, const Weights& w);

// Squared distance to the diagonal subspace in the weighted norm:
// sum_i w_i ||average(x) - x^i||^2. Zero exactly on the diagonal.
double dist_diag_sq(const ProductPoint& x, const Weights& w);

// Gradient of (1/2) dist_diag_sq with respect to the weighted inner product:
// block i equals x^i - average(x), i.e. x - proj_diag(x).
ProductPoint penalty_grad(const ProductPoint& x, const Weights& w);

// Weighted inner product sum_i w_i <x^i, y^i>.
double inner(const ProductPoint& x, const ProductPoint& y, const Weights& w);

double norm_sq(const ProductPoint& x, const Weights& w);

// Explicit metric adapters. Gradients in this library are expressed in the
// weighted inner product; a gradient taken entrywise (Euclidean) has its i-th
// block scaled by w_i relative to the weighted-metric gradient. Conversions
// are never applied implicitly.
ProductPoint euclidean_to_weighted_gradient(ProductPoint g, const Weights& w);
ProductPoint weighted_to_euclidean_gradient(ProductPoint g, const Weights& w);

}  // namespace scg

#endif  // SCG_SPACE_HPP
