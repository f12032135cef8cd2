#include "scg/solver.hpp"

#include <chrono>
#include <cmath>

namespace scg {

namespace {
constexpr double kFeasTol = 1e-9;
}

Schedule::Schedule(ScheduleKind kind, double lambda0) : kind_(kind), lambda0_(lambda0) {
  if (kind_ == ScheduleKind::frozen) {
    if (lambda0_ < 0.0) throw ValidationError("schedule: frozen lambda0 must be nonnegative");
  } else if (!(lambda0_ > 0.0)) {
    throw ValidationError("schedule: lambda0 must be positive");
  }
}

double Schedule::gamma(std::size_t t) const {
  switch (kind_) {
    case ScheduleKind::convex:
      return 2.0 / (std::sqrt(static_cast<double>(t)) + 2.0);
    case ScheduleKind::nonconvex:
      return 1.0 / std::sqrt(static_cast<double>(t) + 1.0);
    case ScheduleKind::frozen:
      return 2.0 / (static_cast<double>(t) + 2.0);
  }
  return 0.0;
}

double Schedule::next_lambda(double lambda_t, std::size_t t) const {
  switch (kind_) {
    case ScheduleKind::convex: {
      double s = std::sqrt(static_cast<double>(t)) + 2.0;
      return lambda_t + lambda0_ / (s * s);
    }
    case ScheduleKind::nonconvex:
      // lambda_t = lambda0 * (partial harmonic sum up to t), with the t = 0
      // in-loop value pinned to lambda0; the first increment is therefore 0.
      return (t >= 1) ? lambda_t + lambda0_ / (static_cast<double>(t) + 1.0) : lambda_t;
    case ScheduleKind::frozen:
      return lambda_t;
  }
  return lambda_t;
}

double Schedule::lambda_at(std::size_t t) const {
  double lam = initial_lambda();
  for (std::size_t k = 0; k < t; ++k) lam = next_lambda(lam, k);
  return lam;
}

ScheduleKind schedule_kind_from_name(std::string_view name) {
  if (name == "convex") return ScheduleKind::convex;
  if (name == "nonconvex") return ScheduleKind::nonconvex;
  if (name == "frozen") return ScheduleKind::frozen;
  throw ValidationError("schedule: unknown kind '" + std::string(name) + "'");
}

std::string_view schedule_kind_name(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::convex:
      return "convex";
    case ScheduleKind::nonconvex:
      return "nonconvex";
    case ScheduleKind::frozen:
      return "frozen";
  }
  return "?";
}

std::string_view termination_name(Termination t) {
  return t == Termination::horizon ? "horizon" : "tolerance";
}

RateConstants rate_constants(const SmoothObjective& f, const ProductConstraint& pc) {
  RateConstants rc;
  rc.L_f = f.lipschitz();
  rc.R = pc.weighted_diameter_sq();
  rc.R_A = pc.weighted_diameter();
  rc.B = rc.R;
  rc.beta_f = f.gradient_norm_bound(pc.minkowski_norm_bound());
  return rc;
}

double rate_envelope_convex(std::size_t t, double lambda0, double L_f, double R) {
  const double s = std::sqrt(static_cast<double>(t)) + 2.0;
  return 2.0 * R * ((lambda0 * (2.0 * std::log(s) + 0.25) + L_f) / s + 4.0 * lambda0 / (s * s));
}

double rate_envelope_nonconvex(std::size_t t, double lambda0, double L_f, double beta_f, double R,
                               double R_A, double B) {
  if (t < 1) throw ValidationError("nonconvex rate envelope is defined for t >= 1");
  const double rt = std::sqrt(static_cast<double>(t));
  return (beta_f * R_A + (L_f + lambda0) * R + lambda0 * B) / rt +
         std::log(static_cast<double>(t) + 1.0) / rt * lambda0 * (R + B);
}

namespace {

double trace_envelope(const Schedule& sched, const RateConstants& rc, std::size_t t) {
  switch (sched.kind()) {
    case ScheduleKind::convex:
      return rate_envelope_convex(t, sched.lambda0(), rc.L_f, rc.R);
    case ScheduleKind::nonconvex:
      // Row t carries the running mean of gaps 0..t, i.e. the average over
      // t+1 iterations, so the bound is evaluated at t+1.
      return rate_envelope_nonconvex(t + 1, sched.lambda0(), rc.L_f, rc.beta_f, rc.R, rc.R_A, rc.B);
    case ScheduleKind::frozen:
      // Classical conditional-gradient primal bound at fixed smoothness.
      return 2.0 * (rc.L_f + sched.lambda0()) * rc.R / (static_cast<double>(t) + 2.0);
  }
  return 0.0;
}

std::int64_t nanos_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

SolveResult scg_solve(const SmoothObjective& f, const ProductConstraint& constraint,
                      const Schedule& schedule, const ProductPoint& x0, std::size_t max_iters,
                      const std::optional<StoppingRule>& stop, const TraceObserver& observer) {
  if (max_iters < 1) throw ValidationError("scg_solve: max_iters must be at least 1");
  if (f.dim() != constraint.dim()) throw DimensionError("scg_solve: objective/constraint dimension mismatch");
  if (x0.block_count() != constraint.count())
    throw DimensionError("scg_solve: x0 block count does not match set count");
  for (std::size_t i = 0; i < constraint.count(); ++i) {
    if (!constraint.set(i).membership(x0[i], kFeasTol))
      throw ValidationError("scg_solve: x0 block " + std::to_string(i) + " is not feasible for its set");
  }

  const Weights& w = constraint.weights();
  const std::size_t m = constraint.count();
  const RateConstants rc = rate_constants(f, constraint);

  SolveResult result;
  result.trace.reserve(max_iters);

  ProductPoint x = x0;
  Point xbar = average(x, w);
  double lam = schedule.initial_lambda();
  double cum_gap = 0.0;
  std::vector<Point> v(m);

  const auto start = std::chrono::steady_clock::now();
  for (std::size_t t = 0; t < max_iters; ++t) {
    const double gamma = schedule.gamma(t);
    const Point g = f.gradient(xbar);

    double gap = 0.0;
    double penalty = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Point dir = g + lam * (x[i] - xbar);
      v[i] = constraint.set(i).lmo(dir);
      gap += w[i] * dir.dot(x[i] - v[i]);
      penalty += w[i] * (xbar - x[i]).squaredNorm();
    }

    IterationRecord rec;
    rec.t = t;
    rec.lambda = lam;
    rec.gamma = gamma;
    rec.f_value = f.value(xbar);
    rec.penalty = penalty;
    rec.F_value = rec.f_value + 0.5 * lam * penalty;
    rec.fw_gap = gap;
    cum_gap += gap;
    rec.avg_fw_gap = cum_gap / static_cast<double>(t + 1);
    rec.rate_envelope = trace_envelope(schedule, rc, t);
    rec.wall_nanos = nanos_since(start);
    result.trace.push_back(rec);
    if (observer) observer(rec);

    if (stop && gap <= stop->epsilon_gap && penalty <= stop->epsilon_feasibility) {
      result.termination = Termination::tolerance;
      break;
    }

    for (std::size_t i = 0; i < m; ++i) x[i] += gamma * (v[i] - x[i]);
    xbar = average(x, w);
    lam = schedule.next_lambda(lam, t);
  }

  result.final_point = x;
  result.final_average = xbar;
  result.final_f = f.value(xbar);
  result.final_penalty = dist_diag_sq(x, w);
  result.final_lambda = lam;
  // One more oracle sweep to report the gap at the final point.
  {
    const Point g = f.gradient(xbar);
    double gap = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Point dir = g + lam * (x[i] - xbar);
      gap += w[i] * dir.dot(x[i] - constraint.set(i).lmo(dir));
    }
    result.final_fw_gap = gap;
  }
  return result;
}

SolveResult vanilla_cg_solve(const SmoothObjective& f, const ConstraintSet& set,
                             const Schedule& schedule, const Point& x0, std::size_t max_iters,
                             const std::optional<StoppingRule>& stop, const TraceObserver& observer) {
  if (max_iters < 1) throw ValidationError("vanilla_cg_solve: max_iters must be at least 1");
  if (f.dim() != set.dim()) throw DimensionError("vanilla_cg_solve: objective/set dimension mismatch");
  if (!set.membership(x0, kFeasTol)) throw ValidationError("vanilla_cg_solve: x0 is not feasible");

  RateConstants rc;
  rc.L_f = f.lipschitz();
  const double r = set.diameter();
  rc.R = r * r;
  rc.R_A = r;
  rc.B = rc.R;
  rc.beta_f = f.gradient_norm_bound(set.norm_bound());

  SolveResult result;
  result.trace.reserve(max_iters);

  Point x = x0;
  double lam = schedule.initial_lambda();
  double cum_gap = 0.0;

  const auto start = std::chrono::steady_clock::now();
  for (std::size_t t = 0; t < max_iters; ++t) {
    const double gamma = schedule.gamma(t);
    const Point g = f.gradient(x);
    const Point v = set.lmo(g);
    const double gap = g.dot(x - v);

    IterationRecord rec;
    rec.t = t;
    rec.lambda = lam;
    rec.gamma = gamma;
    rec.f_value = f.value(x);
    rec.penalty = 0.0;
    rec.F_value = rec.f_value;
    rec.fw_gap = gap;
    cum_gap += gap;
    rec.avg_fw_gap = cum_gap / static_cast<double>(t + 1);
    rec.rate_envelope = trace_envelope(schedule, rc, t);
    rec.wall_nanos = nanos_since(start);
    result.trace.push_back(rec);
    if (observer) observer(rec);

    if (stop && gap <= stop->epsilon_gap) {
      result.termination = Termination::tolerance;
      break;
    }

    x += gamma * (v - x);
    lam = schedule.next_lambda(lam, t);
  }

  result.final_point = ProductPoint(std::vector<Point>{x});
  result.final_average = x;
  result.final_f = f.value(x);
  result.final_penalty = 0.0;
  result.final_lambda = lam;
  result.final_fw_gap = f.gradient(x).dot(x - set.lmo(f.gradient(x)));
  return result;
}

std::pair<double, ProductPoint> fw_gap_subproblem(const PenalizedObjective& F,
                                                  const ProductConstraint& constraint,
                                                  const ProductPoint& x) {
  const ProductPoint grad = F.gradient(x);
  ProductPoint v = constraint.lmo(grad);
  double gap = 0.0;
  const Weights& w = constraint.weights();
  for (std::size_t i = 0; i < x.block_count(); ++i) gap += w[i] * grad[i].dot(x[i] - v[i]);
  return {gap, std::move(v)};
}

}  // namespace scg
