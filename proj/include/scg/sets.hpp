#ifndef SCG_SETS_HPP
#define SCG_SETS_HPP

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "scg/common.hpp"
#include "scg/space.hpp"

namespace scg {

// A nonempty compact convex set exposing a linear minimization oracle, an
// analytic diameter upper bound, and (for the cheap kinds) an exact
// projection used only by oracles and diagnostics.
//
// LMO contract: the returned point lies in the set and minimizes <c, .> over
// it. Ties break toward the smallest index, and a zero direction returns a
// fixed canonical vertex, so the oracle is a deterministic function of c and
// invariant under positive scaling of c.
class ConstraintSet {
 public:
  virtual ~ConstraintSet() = default;

  virtual std::string_view kind() const = 0;
  virtual Eigen::Index dim() const = 0;

  // Analytic upper bound on sup ||a - b|| over the set.
  virtual double diameter() const = 0;

  // Analytic upper bound on sup ||a|| over the set.
  virtual double norm_bound() const = 0;

  virtual Point lmo(const Point& direction) const = 0;

  // True iff x satisfies every defining inequality within tol.
  virtual bool membership(const Point& x, double tol) const = 0;

  virtual bool supports_projection() const { return false; }
  virtual Point project(const Point& x) const;

  // Deterministic feasible sample; distinct seeds give distinct points.
  virtual Point random_feasible(std::uint64_t seed) const = 0;

  // Axis-aligned bounding box, for the grid oracles. Throws CapabilityError
  // for the matrix kinds, where the diagnostics that need a grid are skipped.
  virtual void bounding_box(Point& lo, Point& hi) const;

 protected:
  void check_dim(const Point& x, const char* what) const;
};

using SetPtr = std::shared_ptr<const ConstraintSet>;

SetPtr make_singleton(Point z);
SetPtr make_box(Point lower, Point upper);
SetPtr make_l1_ball(double radius, Point center);
SetPtr make_simplex(Eigen::Index n);
SetPtr make_euclidean_ball(double radius, Point center);
// Matrix-valued points are stored row-major flattened; rows/cols travel with
// the set.
SetPtr make_nuclear_ball(double radius, Eigen::Index rows, Eigen::Index cols);
SetPtr make_spectrahedron(Eigen::Index order);
SetPtr make_birkhoff(Eigen::Index order);

// Cartesian product of equal-dimension sets with the weights of the ambient
// product space.
class ProductConstraint {
 public:
  ProductConstraint(std::vector<SetPtr> sets, Weights weights);

  std::size_t count() const { return sets_.size(); }
  const ConstraintSet& set(std::size_t i) const { return *sets_[i]; }
  SetPtr set_ptr(std::size_t i) const { return sets_[i]; }
  const Weights& weights() const { return weights_; }
  Eigen::Index dim() const { return sets_.front()->dim(); }

  // Blockwise oracle: block i minimizes <c^i, .> over set i.
  ProductPoint lmo(const ProductPoint& direction) const;

  bool membership(const ProductPoint& x, double tol) const;

  ProductPoint random_feasible(std::uint64_t seed) const;

  // sum_i w_i R_i^2 and sum_i w_i R_i (diameter aggregates used by the rate
  // bounds), and sum_i w_i sup||C_i|| (radius of the Minkowski sum).
  double weighted_diameter_sq() const;
  double weighted_diameter() const;
  double minkowski_norm_bound() const;

 private:
  std::vector<SetPtr> sets_;
  Weights weights_;
};

// Exact solution of the linear assignment problem by shortest augmenting
// paths; returns the column assigned to each row. Deterministic.
std::vector<int> solve_assignment(const Matrix& cost);

}  // namespace scg

#endif  // SCG_SETS_HPP
