#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "scg/diagnostics.hpp"

using namespace scg;

namespace {

Point vec(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) p[k++] = x;
  return p;
}

ProductPoint pp(double a, double b) { return ProductPoint({vec({a}), vec({b})}); }

ProductConstraint box_pair() {
  return ProductConstraint({make_box(vec({-2.0}), vec({2.0})), make_box(vec({-1.0}), vec({3.0}))},
                           Weights::uniform(2));
}

}  // namespace

TEST_CASE("averaged distance to the sets") {
  IntervalModel model = make_interval_model(1.0);

  // consensus feasible average: d vanishes
  CHECK(average_sets_distance_sq(pp(1.0, 1.0), model.constraint) == doctest::Approx(0.0));

  // worked value: average -1/2, distance to {1} is 1.5, inside the interval
  CHECK(average_sets_distance_sq(pp(1.0, -2.0), model.constraint) == doctest::Approx(1.125));

  // order against the diagonal distance on random points
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ProductPoint x = model.constraint.random_feasible(seed);
    CHECK(average_sets_distance_sq(x, model.constraint) >= -1e-15);
    CHECK(average_sets_distance_sq(x, model.constraint) <=
          dist_diag_sq(x, model.constraint.weights()) + 1e-9);
  }

  // capability: spectral kinds have no projection
  ProductConstraint nuc({make_nuclear_ball(1.0, 2, 2), make_nuclear_ball(1.0, 2, 2)}, Weights::uniform(2));
  CHECK_THROWS_AS(average_sets_distance_sq(ProductPoint::zero(2, 4), nuc), CapabilityError);
}

TEST_CASE("decomposition of the averaged set distance") {
  IntervalModel model = make_interval_model(1.0);

  // fully feasible consensus point: every term is zero
  ConsensusDecomposition all_zero = consensus_decomposition(pp(1.0, 1.0), model.constraint);
  CHECK(all_zero.d_value == doctest::Approx(0.0));
  CHECK(all_zero.dist_sq == doctest::Approx(0.0));
  CHECK(all_zero.offset_sq == doctest::Approx(0.0));
  CHECK(all_zero.residual <= 1e-15);

  // worked point: d = 1.125, dist^2 = 2.25, offset^2 = 1.125, cross = 0
  ConsensusDecomposition d = consensus_decomposition(pp(1.0, -2.0), model.constraint);
  CHECK(d.d_value == doctest::Approx(1.125));
  CHECK(d.dist_sq == doctest::Approx(2.25));
  CHECK(d.offset_sq == doctest::Approx(1.125));
  CHECK(std::abs(d.cross_inner) <= 1e-15);
  CHECK(d.residual <= 1e-12);

  // the sign condition and the identity over sampled feasible points
  ProductConstraint boxes = box_pair();
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    ProductPoint x = boxes.random_feasible(seed);
    ConsensusDecomposition c = consensus_decomposition(x, boxes);
    CHECK(c.residual <= 1e-9);
    CHECK(c.cross_inner <= 1e-9);
    CHECK(c.d_value >= -1e-15);
    CHECK(c.d_value <= c.dist_sq + 1e-9);
  }
}

TEST_CASE("three-way feasibility equivalence with witnesses") {
  ProductConstraint boxes = box_pair();
  const double tol = 1e-9;

  FeasibilityFlags diag = feasibility_flags(pp(1.0, 1.0), boxes, tol);
  CHECK(diag.agree());
  CHECK(diag.zero_set_distance);

  // average outside the second box
  FeasibilityFlags outside = feasibility_flags(pp(-2.0, -2.0), boxes, tol);
  CHECK(outside.agree());
  CHECK_FALSE(outside.zero_set_distance);

  // feasible average from a point far off the diagonal: the implication from
  // consensus to feasibility is strict
  ProductPoint strict = pp(-1.0, 3.0);
  FeasibilityFlags s = feasibility_flags(strict, boxes, tol);
  CHECK(s.agree());
  CHECK(s.zero_set_distance);
  CHECK(dist_diag_sq(strict, boxes.weights()) == doctest::Approx(4.0));

  for (std::uint64_t seed = 0; seed < 1000; ++seed)
    CHECK(feasibility_flags(boxes.random_feasible(seed), boxes, tol).agree());
}

TEST_CASE("orthogonal split against the lifted intersection point") {
  ProductConstraint boxes = box_pair();
  SetPtr inter = make_box(vec({-1.0}), vec({2.0}));
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    PenaltyReport r = penalty_report(boxes.random_feasible(seed), boxes, *inter);
    CHECK(r.orthogonal_decomposition_residual <= 1e-9);
    CHECK(r.d_value >= -1e-15);
    CHECK(r.d_value <= r.dist_sq + 1e-9);
    CHECK(r.d_value <= r.g_value + 1e-9);  // per-set distances cannot exceed the intersection distance
  }
}

TEST_CASE("grid oracle: three nested infima on the interval model") {
  IntervalModel model = make_interval_model(1.0);
  const std::size_t grid = 10000;

  InterpolationBounds b1 = interpolation_bounds(*model.objective, model.constraint, 1.0, grid);
  CHECK(b1.intersection_inf == doctest::Approx(0.5));
  CHECK(b1.minkowski_inf <= 1e-6);
  CHECK(b1.penalized_inf == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(b1.intersection_inf >= b1.penalized_inf - b1.tolerance);
  CHECK(b1.penalized_inf >= b1.minkowski_inf - 2.0 * b1.tolerance);

  // lambda = 0 collapses the middle problem onto the Minkowski problem
  InterpolationBounds b0 = interpolation_bounds(*model.objective, model.constraint, 0.0, grid);
  CHECK(b0.penalized_inf == b0.minkowski_inf);

  // huge penalty pins the middle problem to the intersection value
  InterpolationBounds binf = interpolation_bounds(*model.objective, model.constraint, 1e6, grid);
  CHECK(std::abs(binf.penalized_inf - binf.intersection_inf) <= binf.tolerance);
}

TEST_CASE("grid oracle refuses oversized instances") {
  ObjectivePtr f = make_quadratic(Point::Zero(4));
  ProductConstraint big({make_box(Point::Constant(4, -1.0), Point::Constant(4, 1.0)),
                         make_box(Point::Constant(4, -1.0), Point::Constant(4, 1.0))},
                        Weights::uniform(2));
  CHECK_THROWS_AS(interpolation_bounds(*f, big, 1.0, 100), ValidationError);

  ObjectivePtr f2 = make_quadratic(Point::Zero(2));
  ProductConstraint wide({make_box(Point::Constant(2, -1.0), Point::Constant(2, 1.0)),
                          make_box(Point::Constant(2, -1.0), Point::Constant(2, 1.0))},
                         Weights::uniform(2));
  CHECK_THROWS_AS(interpolation_bounds(*f2, wide, 1.0, 4000), ValidationError);
}

TEST_CASE("penalized infima climb toward the intersection optimum") {
  IntervalModel model = make_interval_model(1.0);
  std::vector<double> lambdas{0.0, 1.0, 10.0, 100.0, 10000.0};
  std::vector<double> infs = penalized_infima(*model.objective, model.constraint, lambdas, 10000);
  for (std::size_t i = 1; i < infs.size(); ++i) CHECK(infs[i] >= infs[i - 1] - 1e-12);
  CHECK(std::abs(infs.back() - 0.5) <= 1e-3);

  // an objective with zero quadratic part is constant: every infimum equals
  // it (101 points per axis puts the consensus point on the grid, so the
  // penalty term vanishes at the grid minimizer for every lambda)
  ObjectivePtr constant = make_least_squares(Matrix::Zero(1, 1), vec({0.0}));
  std::vector<double> flat = penalized_infima(*constant, model.constraint, lambdas, 101);
  for (double v : flat) CHECK(v == doctest::Approx(0.0));

  // identical singletons: the only grid point is the shared point
  Point z = vec({0.75});
  ProductConstraint singles({make_singleton(z), make_singleton(z)}, Weights::uniform(2));
  ObjectivePtr quad = make_quadratic(vec({0.0}));
  std::vector<double> vals = penalized_infima(*quad, singles, lambdas, 100);
  for (double v : vals) CHECK(v == doctest::Approx(quad->value(z)));
}

TEST_CASE("closed-form subproblem minimizer") {
  IntervalMinimizer m1 = singleton_interval_minimizer(1.0, 1.0);
  CHECK(m1.point[0][0] == doctest::Approx(1.0));
  CHECK(m1.point[1][0] == doctest::Approx(0.0));
  CHECK(m1.average == doctest::Approx(0.5));

  // large penalties drive the average toward the intersection point
  CHECK(std::abs(singleton_interval_minimizer(1.0, 1e12).average - 1.0) <= 1e-11);

  // lambda = 0: the interval block mirrors the singleton
  IntervalMinimizer m0 = singleton_interval_minimizer(1.0, 0.0);
  CHECK(m0.point[1][0] == doctest::Approx(-1.0));
  CHECK(m0.average == doctest::Approx(0.0));

  // grid cross-check of the argmin
  IntervalModel model = make_interval_model(1.0);
  InterpolationBounds b = interpolation_bounds(*model.objective, model.constraint, 1.0, 10000);
  const double h = 4.0 / 9999.0;
  CHECK(std::abs(b.penalized_argmin[1][0] - m1.point[1][0]) <= h);

  // the closed form is a true stationary point of the penalized objective
  PenalizedObjective F(model.objective, 1.0, model.constraint.weights());
  auto [gap, v] = fw_gap_subproblem(F, model.constraint, m1.point);
  CHECK(gap <= 1e-8);
}

TEST_CASE("diameter bounds on the product set") {
  IntervalModel model = make_interval_model(1.0);
  ProductPoint x = pp(1.0, -2.0);
  PairBoundSlack self = diameter_bound_slack(x, x, model.constraint);
  CHECK(self.pair_slack == doctest::Approx(8.0));
  CHECK(self.dist_slack >= -1e-9);

  // extreme interval pair attains the bound exactly
  PairBoundSlack tight = diameter_bound_slack(pp(1.0, -2.0), pp(1.0, 2.0), model.constraint);
  CHECK(tight.pair_slack == doctest::Approx(0.0));

  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    ProductPoint a = model.constraint.random_feasible(seed * 2);
    ProductPoint b = model.constraint.random_feasible(seed * 2 + 1);
    PairBoundSlack s = diameter_bound_slack(a, b, model.constraint);
    CHECK(s.dist_slack >= -1e-9);
    CHECK(s.pair_slack >= -1e-9);
  }
}

TEST_CASE("per-step recurrence on a short interval run") {
  IntervalModel model = make_interval_model(1.0);
  ProductPoint x0({vec({1.0}), vec({1.0})});
  SolveResult run = scg_solve(*model.objective, model.constraint, Schedule(ScheduleKind::convex, 1.0),
                              x0, 2000);
  RecurrenceReport rep = interval_recurrence_report(run.trace, 1.0, 1.0);
  CHECK(rep.steps_checked == 1999);
  CHECK(rep.max_recurrence_violation <= 1e-9);
  CHECK(rep.max_envelope_violation <= 1e-9);
}

TEST_CASE("gap chain from the product problem to the intersection") {
  IntervalModel model = make_interval_model(1.0);
  Point z = vec({1.0});
  SetPtr inter = make_singleton(z);

  // consensus feasible point: chain of nonnegative gaps
  GapChain at_z = stationarity_gap_chain(*model.objective, model.constraint, *inter, 2.0, lift(z, 2));
  CHECK(at_z.subproblem_gap >= at_z.intersection_gap + at_z.penalty_term - 1e-9);
  CHECK(at_z.intersection_gap >= -1e-12);

  // witness with a negative intersection gap: average 1/2 strictly inside
  GapChain neg = stationarity_gap_chain(*model.objective, model.constraint, *inter, 1.0, pp(1.0, 0.0));
  CHECK(neg.intersection_gap == doctest::Approx(-0.25));
  CHECK(neg.subproblem_gap >= neg.intersection_gap + neg.penalty_term - 1e-9);
  CHECK(neg.intersection_gap + neg.penalty_term >= -neg.beta_bound - 1e-9);

  // sampled chain at several penalties
  for (double lam : {0.0, 1.0, 10.0}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      ProductPoint x = model.constraint.random_feasible(seed);
      GapChain c = stationarity_gap_chain(*model.objective, model.constraint, *inter, lam, x);
      CHECK(c.subproblem_gap >= c.intersection_gap + c.penalty_term - 1e-9);
      CHECK(c.intersection_gap + c.penalty_term >= -c.beta_bound - 1e-9);
    }
  }
}
