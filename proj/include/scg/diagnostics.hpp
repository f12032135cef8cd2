#ifndef SCG_DIAGNOSTICS_HPP
#define SCG_DIAGNOSTICS_HPP

#include <cstddef>
#include <vector>

#include "scg/objective.hpp"
#include "scg/sets.hpp"
#include "scg/solver.hpp"

namespace scg {

// Checkable forms of the analytic identities and inequalities satisfied by
// the consensus penalty, plus brute-force oracles for desk-scale instances.
// The grid oracles refuse instances they cannot enumerate densely; nothing is
// ever approximated silently.

// d(x) = sum_i w_i dist^2_{C_i}(average(x)). Requires every set to support
// projection; throws CapabilityError otherwise.
double average_sets_distance_sq(const ProductPoint& x, const ProductConstraint& pc);

// The exact decomposition relating d to the diagonal distance. With
// y = proj_diag(x) and p the blockwise projection of average(x):
//   d(x) = dist_diag_sq(x) - ||x - p||^2 + 2 <x - p, y - p>,
// and the cross inner product is never positive for x in the product set.
struct ConsensusDecomposition {
  double d_value = 0.0;
  double dist_sq = 0.0;
  double offset_sq = 0.0;     // ||x - p||^2 in the weighted norm
  double cross_inner = 0.0;   // <x - p, y - p> in the weighted metric
  double residual = 0.0;      // |lhs - rhs| of the identity
};
ConsensusDecomposition consensus_decomposition(const ProductPoint& x, const ProductConstraint& pc);

// The three equivalent feasibility predicates: d(x) vanishes, the average is
// in every set, the diagonal projection of x is in the product set.
struct FeasibilityFlags {
  bool zero_set_distance = false;
  bool average_feasible = false;
  bool diagonal_projection_feasible = false;
  bool agree() const {
    return zero_set_distance == average_feasible && average_feasible == diagonal_projection_feasible;
  }
};
FeasibilityFlags feasibility_flags(const ProductPoint& x, const ProductConstraint& pc, double tol);

// Penalty quantities at x when the intersection of the sets is itself a
// catalog set (so its exact projection is available): the diagonal distance,
// d, g(x) = dist^2_{intersection}(average(x)), and the residual of the
// orthogonal decomposition
//   sum_i w_i ||x^i - p||^2 = g(x) + dist_diag_sq(x),  p = Proj_intersection(average(x)).
struct PenaltyReport {
  double dist_sq = 0.0;
  double d_value = 0.0;
  double g_value = 0.0;
  double orthogonal_decomposition_residual = 0.0;
};
PenaltyReport penalty_report(const ProductPoint& x, const ProductConstraint& pc,
                             const ConstraintSet& intersection);

// Dense-grid infima of the three nested problems: f over the intersection,
// F_lambda over the product set, f over the Minkowski sum. The reported
// tolerance is grid resolution times a Lipschitz bound. Refuses instances
// beyond desk scale (dimension > 3, more than 3 blocks, or over 1e7 grid
// points).
struct InterpolationBounds {
  double intersection_inf = 0.0;
  double penalized_inf = 0.0;
  double minkowski_inf = 0.0;
  double tolerance = 0.0;
  ProductPoint penalized_argmin;
};
InterpolationBounds interpolation_bounds(const SmoothObjective& f, const ProductConstraint& pc,
                                         double lambda, std::size_t points_per_axis);

// Grid infima of the penalized problem along a penalty sequence.
std::vector<double> penalized_infima(const SmoothObjective& f, const ProductConstraint& pc,
                                     const std::vector<double>& lambdas, std::size_t points_per_axis);

// Closed-form minimizer of the two-set interval model: f(x) = x^2/2 on
// {z} x [-z-1, z+1] with weights (1/2, 1/2). The singleton pins its block to
// z; the interval block is (lambda-1) z / (1+lambda), and the average is
// lambda z / (1+lambda).
struct IntervalMinimizer {
  ProductPoint point;
  double average = 0.0;
};
IntervalMinimizer singleton_interval_minimizer(double z, double lambda);

// Builds the interval-model instance (objective, sets, weights).
struct IntervalModel {
  ObjectivePtr objective;
  ProductConstraint constraint;
};
IntervalModel make_interval_model(double z);

// Slack of the two diameter bounds for feasible x, y: R - dist_diag_sq(x) and
// R - ||x - y||^2 with R = sum_i w_i R_i^2. Both must be >= -1e-9.
struct PairBoundSlack {
  double dist_slack = 0.0;
  double pair_slack = 0.0;
};
PairBoundSlack diameter_bound_slack(const ProductPoint& x, const ProductPoint& y,
                                    const ProductConstraint& pc);

// Replays a trace of the interval model under the convex schedule. H_t is
// computed exactly from the closed-form subproblem minimizer, then checked
// against the one-step recurrence
//   H_{t+1} <= (1 - gamma_t) H_t + (lambda_{t+1} - lambda_t) R / 2
//              + gamma_t^2 (lambda_t + L_f) R / 2
// and against the convex-schedule envelope.
struct RecurrenceReport {
  double max_recurrence_violation = 0.0;
  double max_envelope_violation = 0.0;
  std::size_t steps_checked = 0;
};
RecurrenceReport interval_recurrence_report(const std::vector<IterationRecord>& trace, double z,
                                            double lambda0);

// The chain linking the product-space gap to the intersection gap at the
// average: subproblem_gap >= intersection_gap + penalty_term >= -beta_bound.
// The middle quantity may be negative when average(x) is infeasible.
struct GapChain {
  double subproblem_gap = 0.0;
  double intersection_gap = 0.0;
  double penalty_term = 0.0;
  double beta_bound = 0.0;
};
GapChain stationarity_gap_chain(const SmoothObjective& f, const ProductConstraint& pc,
                                const ConstraintSet& intersection, double lambda,
                                const ProductPoint& x);

}  // namespace scg

#endif  // SCG_DIAGNOSTICS_HPP
