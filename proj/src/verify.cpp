#include "scg/verify.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "scg/config.hpp"
#include "scg/diagnostics.hpp"

namespace scg {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void add(SuiteReport& report, std::string name, bool pass, std::string detail) {
  report.checks.push_back(CheckResult{std::move(name), pass, std::move(detail)});
  report.pass = report.pass && pass;
}

// Two overlapping intervals; their intersection is again a box.
struct BoxPairModel {
  ProductConstraint constraint;
  SetPtr intersection;
};

BoxPairModel make_box_pair() {
  Point l1(1), u1(1), l2(1), u2(1), li(1), ui(1);
  l1[0] = -2.0;
  u1[0] = 2.0;
  l2[0] = -1.0;
  u2[0] = 3.0;
  li[0] = -1.0;
  ui[0] = 2.0;
  return BoxPairModel{ProductConstraint({make_box(l1, u1), make_box(l2, u2)}, Weights::uniform(2)),
                      make_box(li, ui)};
}

SuiteReport geometry_suite() {
  SuiteReport report{"geometry", {}, true};
  const double tol = 1e-9;

  IntervalModel interval = make_interval_model(1.0);
  BoxPairModel boxes = make_box_pair();
  const SetPtr interval_intersection = [&] {
    Point z(1);
    z[0] = 1.0;
    return make_singleton(z);
  }();

  // Three-way feasibility equivalence over sampled and constructed points.
  {
    std::size_t disagreements = 0, checked = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      for (int rep = 0; rep < 5; ++rep) {
        for (const ProductConstraint* pc : {&interval.constraint, &boxes.constraint}) {
          ProductPoint x = pc->random_feasible(seed * 131 + static_cast<std::uint64_t>(rep));
          if (!feasibility_flags(x, *pc, tol).agree()) ++disagreements;
          ++checked;
        }
      }
    }
    // Constructed witnesses on the box pair: a consensus point, a strict
    // point (feasible average off the diagonal), an infeasible average.
    auto pp = [](double a, double b) {
      Point x1(1), x2(1);
      x1[0] = a;
      x2[0] = b;
      return ProductPoint({x1, x2});
    };
    FeasibilityFlags diag = feasibility_flags(pp(1.0, 1.0), boxes.constraint, tol);
    FeasibilityFlags strict = feasibility_flags(pp(-1.0, 3.0), boxes.constraint, tol);
    FeasibilityFlags outside = feasibility_flags(pp(-2.0, -2.0), boxes.constraint, tol);
    bool witnesses = diag.agree() && diag.zero_set_distance && strict.agree() &&
                     strict.zero_set_distance && outside.agree() && !outside.zero_set_distance &&
                     dist_diag_sq(pp(-1.0, 3.0), boxes.constraint.weights()) > 1.0;
    add(report, "feasibility-equivalence", disagreements == 0 && witnesses,
        "checked=" + std::to_string(checked) + " disagreements=" + std::to_string(disagreements));
  }

  // 0 <= d(x) <= dist_diag_sq(x) on sampled feasible points.
  {
    double worst = -1e300;
    bool nonneg = true;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      for (const ProductConstraint* pc : {&interval.constraint, &boxes.constraint}) {
        ProductPoint x = pc->random_feasible(seed * 977 + 5);
        double d = average_sets_distance_sq(x, *pc);
        double dd = dist_diag_sq(x, pc->weights());
        nonneg = nonneg && d >= -1e-15;
        worst = std::max(worst, d - dd);
      }
    }
    add(report, "penalty-order", nonneg && worst <= tol, "max d - dist^2 = " + fmt(worst));
  }

  // Exact decomposition of d and the obtuse-angle sign condition.
  {
    double worst_residual = 0.0, worst_cross = -1e300;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      for (int rep = 0; rep < 5; ++rep) {
        for (const ProductConstraint* pc : {&interval.constraint, &boxes.constraint}) {
          ProductPoint x = pc->random_feasible(seed * 613 + static_cast<std::uint64_t>(rep) + 17);
          ConsensusDecomposition d = consensus_decomposition(x, *pc);
          worst_residual = std::max(worst_residual, d.residual);
          worst_cross = std::max(worst_cross, d.cross_inner);
        }
      }
    }
    add(report, "consensus-decomposition", worst_residual <= tol && worst_cross <= tol,
        "max residual = " + fmt(worst_residual) + ", max cross inner = " + fmt(worst_cross));
  }

  // Orthogonal split of the distance to the lifted intersection point.
  {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      ProductPoint xi = interval.constraint.random_feasible(seed + 3);
      worst = std::max(worst,
                       penalty_report(xi, interval.constraint, *interval_intersection)
                           .orthogonal_decomposition_residual);
      ProductPoint xb = boxes.constraint.random_feasible(seed + 7);
      worst = std::max(worst,
                       penalty_report(xb, boxes.constraint, *boxes.intersection)
                           .orthogonal_decomposition_residual);
    }
    add(report, "orthogonal-decomposition", worst <= tol, "max residual = " + fmt(worst));
  }

  return report;
}

SuiteReport interpolation_suite() {
  SuiteReport report{"interpolation", {}, true};
  IntervalModel model = make_interval_model(1.0);
  const Weights& w = model.constraint.weights();
  const std::size_t grid = 10000;

  // Penalty-shift identity, relative error 1e-12 over sampled points.
  {
    double worst = 0.0;
    PenalizedObjective F(model.objective, 1.0, w);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      ProductPoint x = model.constraint.random_feasible(seed);
      for (double delta : {0.0, 2.5, -0.5}) {
        auto pair = F.shifted_value(delta, x);
        double rel = std::abs(pair.direct - pair.shifted) / std::max(1.0, std::abs(pair.direct));
        worst = std::max(worst, rel);
      }
    }
    add(report, "penalty-shift-identity", worst <= 1e-12, "max rel err = " + fmt(worst));
  }

  // Pointwise monotonicity in the penalty.
  {
    bool ok = true;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      ProductPoint x = model.constraint.random_feasible(seed + 11);
      double prev = PenalizedObjective(model.objective, 0.0, w).value(x);
      for (double lam : {0.5, 1.0, 4.0, 32.0}) {
        double cur = PenalizedObjective(model.objective, lam, w).value(x);
        ok = ok && cur >= prev - 1e-12;
        prev = cur;
      }
    }
    add(report, "pointwise-monotonicity", ok, "lambda grid {0,0.5,1,4,32}");
  }

  // Sandwich of the three infima at several penalties.
  {
    bool ok = true;
    std::ostringstream detail;
    for (double lam : {0.0, 1.0, 1e6}) {
      InterpolationBounds b = interpolation_bounds(*model.objective, model.constraint, lam, grid);
      ok = ok && b.intersection_inf >= b.penalized_inf - b.tolerance &&
           b.penalized_inf >= b.minkowski_inf - 2.0 * b.tolerance;
      if (lam == 0.0) ok = ok && std::abs(b.penalized_inf - b.minkowski_inf) <= 1e-15;
      detail << "lam=" << lam << " [" << fmt(b.minkowski_inf) << " <= " << fmt(b.penalized_inf)
             << " <= " << fmt(b.intersection_inf) << "] ";
    }
    add(report, "value-sandwich", ok, detail.str());
  }

  // Monotone approach of the penalized infima to the intersection optimum.
  {
    std::vector<double> lambdas{0.0, 1.0, 10.0, 100.0, 10000.0};
    std::vector<double> infs = penalized_infima(*model.objective, model.constraint, lambdas, grid);
    bool monotone = true;
    for (std::size_t i = 1; i < infs.size(); ++i) monotone = monotone && infs[i] >= infs[i - 1] - 1e-12;
    double inter = interpolation_bounds(*model.objective, model.constraint, 0.0, grid).intersection_inf;
    bool close = std::abs(infs.back() - inter) <= 1e-3;
    add(report, "infima-limit", monotone && close,
        "final=" + fmt(infs.back()) + " target=" + fmt(inter));
  }

  // Closed-form subproblem minimizer against the grid argmin.
  {
    const double lam = 1.0;
    InterpolationBounds b = interpolation_bounds(*model.objective, model.constraint, lam, grid);
    IntervalMinimizer m = singleton_interval_minimizer(1.0, lam);
    const double h = 4.0 / static_cast<double>(grid - 1);
    double dev = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
      dev = std::max(dev, (b.penalized_argmin[i] - m.point[i]).lpNorm<Eigen::Infinity>());
    add(report, "closed-form-minimizer", dev <= h, "max block deviation = " + fmt(dev) + ", grid h = " + fmt(h));
  }

  // Larger penalties trade objective value for consensus, monotonically.
  {
    bool ok = true;
    double prev_f = -1e300, prev_d = 1e300;
    for (double lam : {0.0, 1.0, 10.0, 100.0}) {
      IntervalMinimizer m = singleton_interval_minimizer(1.0, lam);
      double fv = model.objective->value(average(m.point, w));
      double dd = dist_diag_sq(m.point, w);
      ok = ok && fv >= prev_f - 1e-12 && dd <= prev_d + 1e-12;
      prev_f = fv;
      prev_d = dd;
    }
    add(report, "regularization-order", ok, "lambda in {0,1,10,100}");
  }

  return report;
}

SuiteReport rates_suite() {
  SuiteReport report{"rates", {}, true};

  // Convex schedule on the interval model: per-step recurrence and envelope.
  {
    IntervalModel model = make_interval_model(1.0);
    Point b1(1), b2(1);
    b1[0] = 1.0;
    b2[0] = 1.0;
    SolveResult run = scg_solve(*model.objective, model.constraint, Schedule(ScheduleKind::convex, 1.0),
                                ProductPoint({b1, b2}), 20000);
    RecurrenceReport rep = interval_recurrence_report(run.trace, 1.0, 1.0);
    add(report, "convex-recurrence", rep.max_recurrence_violation <= 1e-9,
        "max violation = " + fmt(rep.max_recurrence_violation) + " over " +
            std::to_string(rep.steps_checked) + " steps");
    add(report, "convex-envelope", rep.max_envelope_violation <= 1e-9,
        "max violation = " + fmt(rep.max_envelope_violation));
  }

  // Nonconvex schedule: recorded running-average gap under its envelope and
  // per-iteration gaps nonnegative.
  {
    ProblemConfig cfg = builtin_config("nonconvex-box");
    Overrides o;
    o.max_iters = 20000;
    cfg = apply_overrides(std::move(cfg), o);
    Problem p = build_problem(cfg);
    SolveResult run = scg_solve(*p.objective, p.constraint, p.schedule, p.x0, p.max_iters, p.stop);
    double worst_env = -1e300, worst_gap = 1e300;
    for (const IterationRecord& r : run.trace) {
      worst_env = std::max(worst_env, r.avg_fw_gap - r.rate_envelope);
      worst_gap = std::min(worst_gap, r.fw_gap);
    }
    add(report, "nonconvex-envelope", worst_env <= 0.0, "max avg gap - envelope = " + fmt(worst_env));
    add(report, "gap-nonnegative", worst_gap >= -1e-9, "min gap = " + fmt(worst_gap));
  }

  // Closed-form growth bounds on both schedules.
  {
    bool ok = true;
    Schedule cvx(ScheduleKind::convex, 1.0), ncv(ScheduleKind::nonconvex, 1.0);
    double lam_c = cvx.initial_lambda(), lam_n = ncv.initial_lambda(), gamma_sum = 0.0;
    for (std::size_t t = 0; t <= 100000; ++t) {
      const double s = std::sqrt(static_cast<double>(t)) + 2.0;
      ok = ok && lam_c <= 1.0 * (2.0 * std::log(s) + 4.0 / s) + 1e-12;
      ok = ok && lam_n <= 1.0 * (std::log(static_cast<double>(t) + 1.0) + 1.0) + 1e-12;
      if (t >= 1) ok = ok && gamma_sum <= 2.0 * std::sqrt(static_cast<double>(t)) + 1e-12;
      gamma_sum += ncv.gamma(t);
      lam_c = cvx.next_lambda(lam_c, t);
      lam_n = ncv.next_lambda(lam_n, t);
    }
    add(report, "schedule-bounds", ok, "t up to 1e5");
  }

  // Single-set degeneracy: the split solver reduces to classical CG.
  {
    Point b(2);
    b << 0.2, -0.1;
    ObjectivePtr f = make_quadratic(b);
    Point lo = Point::Constant(2, -1.0), hi = Point::Constant(2, 1.0);
    SetPtr box = make_box(lo, hi);
    Schedule sched(ScheduleKind::convex, 1.0);
    Point x0 = Point::Constant(2, 0.5);
    SolveResult split = scg_solve(*f, ProductConstraint({box}, Weights::uniform(1)), sched,
                                  ProductPoint({x0}), 1000);
    SolveResult vanilla = vanilla_cg_solve(*f, *box, sched, x0, 1000);
    double worst = 0.0;
    for (std::size_t t = 0; t < split.trace.size(); ++t) {
      const IterationRecord &a = split.trace[t], &c = vanilla.trace[t];
      worst = std::max({worst, std::abs(a.f_value - c.f_value), std::abs(a.F_value - c.F_value),
                        std::abs(a.fw_gap - c.fw_gap), std::abs(a.penalty - c.penalty),
                        std::abs(a.lambda - c.lambda), std::abs(a.gamma - c.gamma)});
    }
    add(report, "single-set-degeneracy", worst <= 1e-12, "max field deviation = " + fmt(worst));
  }

  return report;
}

}  // namespace

std::vector<std::string> verify_suite_names() { return {"geometry", "interpolation", "rates", "all"}; }

SuiteReport run_verify_suite(const std::string& name) {
  if (name == "geometry") return geometry_suite();
  if (name == "interpolation") return interpolation_suite();
  if (name == "rates") return rates_suite();
  if (name == "all") {
    SuiteReport all{"all", {}, true};
    for (const char* n : {"geometry", "interpolation", "rates"}) {
      SuiteReport r = run_verify_suite(n);
      for (auto& c : r.checks) {
        c.name = r.suite + "/" + c.name;
        all.checks.push_back(std::move(c));
      }
      all.pass = all.pass && r.pass;
    }
    return all;
  }
  throw ValidationError("unknown verify suite '" + name + "'; available: geometry, interpolation, rates, all");
}

}  // namespace scg
