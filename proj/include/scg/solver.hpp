#ifndef SCG_SOLVER_HPP
#define SCG_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "scg/objective.hpp"
#include "scg/sets.hpp"

namespace scg {

enum class ScheduleKind { convex, nonconvex, frozen };

// Parameter laws (step size gamma_t, penalty lambda_t):
//   convex:    gamma_t = 2/(sqrt(t)+2),  lambda_{t+1} = lambda_t + lambda0 (sqrt(t)+2)^-2
//   nonconvex: gamma_t = 1/sqrt(t+1),    lambda_t = lambda0 * sum_{k=0}^{t-1} 1/(k+1)  (t >= 1)
//   frozen:    gamma_t = 2/(t+2),        lambda_t = lambda0 constant (lambda0 = 0 selects the
//              Minkowski-sum problem)
// The in-loop value at t = 0 is lambda0 for all kinds.
class Schedule {
 public:
  Schedule(ScheduleKind kind, double lambda0);

  ScheduleKind kind() const { return kind_; }
  double lambda0() const { return lambda0_; }

  double gamma(std::size_t t) const;
  double initial_lambda() const { return lambda0_; }
  double next_lambda(double lambda_t, std::size_t t) const;

  // Reference path, O(t); the solver keeps lambda incrementally.
  double lambda_at(std::size_t t) const;

 private:
  ScheduleKind kind_;
  double lambda0_;
};

ScheduleKind schedule_kind_from_name(std::string_view name);
std::string_view schedule_kind_name(ScheduleKind kind);

struct IterationRecord {
  std::size_t t = 0;
  double lambda = 0.0;
  double gamma = 0.0;
  double f_value = 0.0;   // f(average(x_t))
  double penalty = 0.0;   // dist_diag_sq(x_t)
  double F_value = 0.0;   // f_value + (lambda/2) * penalty
  double fw_gap = 0.0;    // <grad F_lambda(x_t), x_t - v_t> in the weighted metric
  double avg_fw_gap = 0.0;
  double rate_envelope = 0.0;
  std::int64_t wall_nanos = 0;
};

// Opt-in early stop: fw_gap <= epsilon_gap and penalty <= epsilon_feasibility.
struct StoppingRule {
  double epsilon_gap = 1e-6;
  double epsilon_feasibility = 1e-8;
};

enum class Termination { horizon, tolerance };
std::string_view termination_name(Termination t);

struct SolveResult {
  ProductPoint final_point;
  Point final_average;
  double final_f = 0.0;
  double final_penalty = 0.0;
  double final_fw_gap = 0.0;
  double final_lambda = 0.0;
  std::vector<IterationRecord> trace;
  Termination termination = Termination::horizon;
};

// Instance constants consumed by the rate envelopes. R and R_A aggregate the
// set diameters; B = max(beta_p sqrt(R), R) collapses to R because the
// penalty-gradient bound beta_p is itself bounded by sqrt(R); beta_f bounds
// the gradient norm over the Minkowski sum of the weighted sets.
struct RateConstants {
  double L_f = 0.0;
  double R = 0.0;
  double R_A = 0.0;
  double B = 0.0;
  double beta_f = 0.0;
};

RateConstants rate_constants(const SmoothObjective& f, const ProductConstraint& pc);

// Primal-gap envelope for the convex schedule:
//   2 R [ (lambda0 (2 ln(sqrt(t)+2) + 1/4) + L_f) / (sqrt(t)+2) + 4 lambda0 / (sqrt(t)+2)^2 ].
double rate_envelope_convex(std::size_t t, double lambda0, double L_f, double R);

// Average-gap envelope for the nonconvex schedule, t >= 1:
//   (1/sqrt(t)) (beta_f R_A + (L_f + lambda0) R + lambda0 B)
//   + (ln(t+1)/sqrt(t)) lambda0 (R + B).
double rate_envelope_nonconvex(std::size_t t, double lambda0, double L_f, double beta_f, double R,
                               double R_A, double B);

using TraceObserver = std::function<void(const IterationRecord&)>;

// One conditional-gradient step per iteration on the penalized product-space
// relaxation: g_t = grad f(average(x_t)); per block v_t^i =
// lmo_i(g_t + lambda_t (x_t^i - average(x_t))); x_{t+1}^i = x_t^i +
// gamma_t (v_t^i - x_t^i). Every iterate stays blockwise feasible. The F-W
// gap is recorded from the already-available v_t at the cost of one inner
// product per block.
SolveResult scg_solve(const SmoothObjective& f, const ProductConstraint& constraint,
                      const Schedule& schedule, const ProductPoint& x0, std::size_t max_iters,
                      const std::optional<StoppingRule>& stop = std::nullopt,
                      const TraceObserver& observer = nullptr);

// Classical conditional gradient over a single set, used as the m = 1
// baseline. Kept as an independent implementation so the degeneracy check
// compares two code paths.
SolveResult vanilla_cg_solve(const SmoothObjective& f, const ConstraintSet& set,
                             const Schedule& schedule, const Point& x0, std::size_t max_iters,
                             const std::optional<StoppingRule>& stop = std::nullopt,
                             const TraceObserver& observer = nullptr);

// F-W gap of the penalized objective over the product constraint at x,
// together with the minimizing vertex.
std::pair<double, ProductPoint> fw_gap_subproblem(const PenalizedObjective& F,
                                                  const ProductConstraint& constraint,
                                                  const ProductPoint& x);

}  // namespace scg

#endif  // SCG_SOLVER_HPP
