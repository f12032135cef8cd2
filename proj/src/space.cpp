#include "scg/space.hpp"

#include <cmath>
#include <utility>

namespace scg {

double SplitMix64::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 in (0,1] so the log is finite.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

Point SplitMix64::uniform_vector(Eigen::Index n, double lo, double hi) {
  Point v(n);
  for (Eigen::Index k = 0; k < n; ++k) v[k] = uniform(lo, hi);
  return v;
}

Point SplitMix64::normal_vector(Eigen::Index n) {
  Point v(n);
  for (Eigen::Index k = 0; k < n; ++k) v[k] = normal();
  return v;
}

void require_finite(const Point& x, const char* what) {
  if (!x.allFinite()) throw ValidationError(std::string(what) + ": non-finite entries");
}

Weights::Weights(std::vector<double> omega) : omega_(std::move(omega)) {
  if (omega_.empty()) throw ValidationError("weights: need at least one block");
  double sum = 0.0;
  for (double w : omega_) {
    if (!(w > 0.0) || w > 1.0) throw ValidationError("weights: every entry must lie in (0, 1]");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ValidationError("weights: entries must sum to 1 within 1e-12 (got " + std::to_string(sum) + ")");
}

Weights Weights::uniform(std::size_t m) {
  if (m == 0) throw ValidationError("weights: m must be positive");
  // Exact sum for the common cases; 1/m rounding can otherwise trip the
  // validation tolerance only for absurd m.
  std::vector<double> w(m, 1.0 / static_cast<double>(m));
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) sum += w[i];
  w[m - 1] = 1.0 - sum;
  return Weights(std::move(w));
}

ProductPoint::ProductPoint(std::vector<Point> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw ValidationError("product point: need at least one block");
  const Eigen::Index n = blocks_.front().size();
  for (const Point& b : blocks_) {
    if (b.size() != n) throw DimensionError("product point: blocks must share one dimension");
  }
}

ProductPoint ProductPoint::zero(std::size_t m, Eigen::Index dim) {
  return ProductPoint(std::vector<Point>(m, Point::Zero(dim)));
}

namespace {

void check_pair(const ProductPoint& x, const Weights& w, const char* what) {
  if (x.block_count() == 0) throw DimensionError(std::string(what) + ": empty product point");
  if (x.block_count() != w.count())
    throw DimensionError(std::string(what) + ": block count does not match weight count");
}

}  // namespace

Point average(const ProductPoint& x, const Weights& w) {
  check_pair(x, w, "average");
  Point out = w[0] * x[0];
  for (std::size_t i = 1; i < x.block_count(); ++i) out += w[i] * x[i];
  return out;
}

ProductPoint lift(const Point& x, std::size_t m) {
  if (m == 0) throw ValidationError("lift: m must be positive");
  return ProductPoint(std::vector<Point>(m, x));
}

ProductPoint proj_diag(const ProductPoint& x, const Weights& w) {
  return lift(average(x, w), x.block_count());
}

double dist_diag_sq(const ProductPoint& x, const Weights& w) {
  check_pair(x, w, "dist_diag_sq");
  const Point ax = average(x, w);
  double out = 0.0;
  for (std::size_t i = 0; i < x.block_count(); ++i) out += w[i] * (ax - x[i]).squaredNorm();
  return out;
}

ProductPoint penalty_grad(const ProductPoint& x, const Weights& w) {
  const Point ax = average(x, w);
  std::vector<Point> blocks;
  blocks.reserve(x.block_count());
  for (std::size_t i = 0; i < x.block_count(); ++i) blocks.push_back(x[i] - ax);
  return ProductPoint(std::move(blocks));
}

double inner(const ProductPoint& x, const ProductPoint& y, const Weights& w) {
  check_pair(x, w, "inner");
  if (y.block_count() != x.block_count() || y.dim() != x.dim())
    throw DimensionError("inner: mismatched product points");
  double out = 0.0;
  for (std::size_t i = 0; i < x.block_count(); ++i) out += w[i] * x[i].dot(y[i]);
  return out;
}

double norm_sq(const ProductPoint& x, const Weights& w) { return inner(x, x, w); }

ProductPoint euclidean_to_weighted_gradient(ProductPoint g, const Weights& w) {
  check_pair(g, w, "euclidean_to_weighted_gradient");
  for (std::size_t i = 0; i < g.block_count(); ++i) g[i] /= w[i];
  return g;
}

ProductPoint weighted_to_euclidean_gradient(ProductPoint g, const Weights& w) {
  check_pair(g, w, "weighted_to_euclidean_gradient");
  for (std::size_t i = 0; i < g.block_count(); ++i) g[i] *= w[i];
  return g;
}

}  // namespace scg
