#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "scg/diagnostics.hpp"
#include "scg/objective.hpp"

using namespace scg;

namespace {

Point vec(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) p[k++] = x;
  return p;
}

Matrix random_symmetric(SplitMix64& rng, Eigen::Index n, double scale) {
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = rng.uniform(-scale, scale);
  return 0.5 * (m + m.transpose());
}

// Pairs drawn from the Minkowski sum of the weighted sets.
Point minkowski_sample(const ProductConstraint& pc, std::uint64_t seed) {
  return average(pc.random_feasible(seed), pc.weights());
}

void check_descent_lemma(const SmoothObjective& f, const ProductConstraint& pc, std::uint64_t salt) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Point x = minkowski_sample(pc, seed * 3 + salt);
    Point y = minkowski_sample(pc, seed * 3 + salt + 1);
    double lhs = f.value(y) - f.value(x);
    double rhs = f.gradient(x).dot(y - x) + 0.5 * f.lipschitz() * (y - x).squaredNorm();
    CHECK(lhs <= rhs + 1e-9);
  }
}

void check_gradient_fd(const SmoothObjective& f, SplitMix64& rng) {
  for (int rep = 0; rep < 30; ++rep) {
    Point x = rng.uniform_vector(f.dim(), -2.0, 2.0);
    Point fd = oracles::fd_gradient([&](const Point& p) { return f.value(p); }, x, 2e-5);
    Point g = f.gradient(x);
    CHECK((fd - g).norm() <= 1e-6 * std::max(1.0, g.norm()));
  }
}

}  // namespace

TEST_CASE("stock objectives: gradients, constants, descent lemma") {
  SplitMix64 rng(61);
  ProductConstraint pc({make_box(Point::Constant(3, -1.5), Point::Constant(3, 1.5)),
                        make_l1_ball(2.0, Point::Zero(3))},
                       Weights::uniform(2));

  auto quad = make_quadratic(vec({0.5, -0.25, 1.0}));
  CHECK(quad->lipschitz() == 1.0);
  check_gradient_fd(*quad, rng);
  check_descent_lemma(*quad, pc, 11);

  Matrix m(4, 3);
  for (Eigen::Index r = 0; r < 4; ++r)
    for (Eigen::Index c = 0; c < 3; ++c) m(r, c) = rng.uniform(-1.0, 1.0);
  auto ls = make_least_squares(m, vec({1.0, 0.0, -1.0, 0.5}));
  // power-iteration constant against the dense decomposition
  CHECK(ls->lipschitz() ==
        doctest::Approx(oracles::dense_max_abs_eigenvalue(m.transpose() * m)).epsilon(1e-9));
  check_gradient_fd(*ls, rng);
  check_descent_lemma(*ls, pc, 17);

  Matrix q = random_symmetric(rng, 3, 1.0);
  auto iq = make_indefinite_quadratic(q, vec({0.1, -0.2, 0.05}));
  CHECK(iq->lipschitz() == doctest::Approx(oracles::dense_max_abs_eigenvalue(q)).epsilon(1e-12));
  check_gradient_fd(*iq, rng);
  check_descent_lemma(*iq, pc, 23);

  CHECK_THROWS_AS(make_indefinite_quadratic(Matrix::Ones(2, 3), vec({0.0, 0.0})), DimensionError);
}

TEST_CASE("gradient norm bounds hold on sampled points") {
  SplitMix64 rng(67);
  ProductConstraint pc({make_box(Point::Constant(3, -1.0), Point::Constant(3, 1.0)),
                        make_euclidean_ball(1.0, Point::Zero(3))},
                       Weights::uniform(2));
  const double radius = pc.minkowski_norm_bound();

  Matrix q = random_symmetric(rng, 3, 1.0);
  std::vector<ObjectivePtr> fs{make_quadratic(vec({0.3, 0.3, -0.3})),
                               make_indefinite_quadratic(q, vec({0.1, 0.0, -0.1}))};
  for (const auto& f : fs) {
    const double bound = f->gradient_norm_bound(radius);
    for (std::uint64_t seed = 0; seed < 200; ++seed)
      CHECK(f->gradient(minkowski_sample(pc, seed)).norm() <= bound + 1e-9);
  }
}

TEST_CASE("penalized objective evaluation") {
  IntervalModel model = make_interval_model(1.0);
  const Weights& w = model.constraint.weights();

  // on the diagonal the penalty vanishes
  PenalizedObjective F1(model.objective, 3.0, w);
  ProductPoint diag = lift(vec({0.5}), 2);
  CHECK(F1.value(diag) == doctest::Approx(model.objective->value(vec({0.5}))));

  // lambda = 0 is the Minkowski-sum objective
  PenalizedObjective F0(model.objective, 0.0, w);
  ProductPoint x({vec({1.0}), vec({0.0})});
  CHECK(F0.value(x) == doctest::Approx(model.objective->value(vec({0.5}))));

  // worked example: z = 1, lambda = 1, x = ((1),(0))
  PenalizedObjective F(model.objective, 1.0, w);
  CHECK(F.value(x) == doctest::Approx(0.25));
  CHECK(F.smoothness() == doctest::Approx(2.0));
}

TEST_CASE("penalized gradient") {
  IntervalModel model = make_interval_model(1.0);
  const Weights& w = model.constraint.weights();
  PenalizedObjective F(model.objective, 2.0, w);

  // on the diagonal every block is the base gradient
  ProductPoint diag = lift(vec({0.75}), 2);
  ProductPoint g = F.gradient(diag);
  for (std::size_t i = 0; i < 2; ++i)
    CHECK((g[i] - model.objective->gradient(vec({0.75}))).norm() == 0.0);

  PenalizedObjective F0(model.objective, 0.0, w);
  ProductPoint x({vec({1.0}), vec({-0.5})});
  ProductPoint g0 = F0.gradient(x);
  Point base = model.objective->gradient(average(x, w));
  for (std::size_t i = 0; i < 2; ++i) CHECK((g0[i] - base).norm() == 0.0);

  // matches central differences in the weighted metric
  SplitMix64 rng(71);
  for (int rep = 0; rep < 100; ++rep) {
    ProductPoint p({rng.uniform_vector(1, -2.0, 2.0), rng.uniform_vector(1, -2.0, 2.0)});
    ProductPoint fd = oracles::fd_product_gradient([&](const ProductPoint& q) { return F.value(q); }, p, 2e-5);
    ProductPoint fdw = euclidean_to_weighted_gradient(fd, w);
    ProductPoint gg = F.gradient(p);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      num += (fdw[i] - gg[i]).squaredNorm();
      den += gg[i].squaredNorm();
    }
    CHECK(std::sqrt(num) <= 1e-6 * std::max(1.0, std::sqrt(den)));
  }
}

TEST_CASE("penalty shift identity") {
  IntervalModel model = make_interval_model(1.0);
  const Weights& w = model.constraint.weights();
  PenalizedObjective F(model.objective, 1.0, w);

  ProductPoint x({vec({0.7}), vec({-1.3})});
  auto p0 = F.shifted_value(0.0, x);
  CHECK(p0.direct == p0.shifted);

  ProductPoint diag = lift(vec({0.4}), 2);
  for (double delta : {-0.5, 0.0, 2.5, 100.0}) {
    auto pd = F.shifted_value(delta, diag);
    CHECK(pd.direct == doctest::Approx(pd.shifted).epsilon(1e-15));
  }

  SplitMix64 rng(73);
  for (int rep = 0; rep < 100; ++rep) {
    ProductPoint p({rng.uniform_vector(1, -2.0, 2.0), rng.uniform_vector(1, -2.0, 2.0)});
    auto pr = F.shifted_value(2.5, p);
    CHECK(std::abs(pr.direct - pr.shifted) <= 1e-12 * std::max(1.0, std::abs(pr.direct)));
  }
}

TEST_CASE("penalized value is monotone in the penalty") {
  IntervalModel model = make_interval_model(1.0);
  const Weights& w = model.constraint.weights();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ProductPoint x = model.constraint.random_feasible(seed);
    double prev = PenalizedObjective(model.objective, 0.0, w).value(x);
    for (double lam : {0.25, 1.0, 5.0, 50.0}) {
      double cur = PenalizedObjective(model.objective, lam, w).value(x);
      CHECK(cur >= prev - 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("penalized smoothness constant is valid on the product set") {
  IntervalModel model = make_interval_model(1.0);
  const Weights& w = model.constraint.weights();
  PenalizedObjective F(model.objective, 4.0, w);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ProductPoint x = model.constraint.random_feasible(seed * 2);
    ProductPoint y = model.constraint.random_feasible(seed * 2 + 1);
    ProductPoint diff = y;
    for (std::size_t i = 0; i < 2; ++i) diff[i] -= x[i];
    double lhs = F.value(y) - F.value(x);
    double rhs = inner(F.gradient(x), diff, w) + 0.5 * F.smoothness() * norm_sq(diff, w);
    CHECK(lhs <= rhs + 1e-9);
  }
}

TEST_CASE("larger penalties trade value for consensus at the subproblem optimum") {
  IntervalModel model = make_interval_model(1.0);
  const Weights& w = model.constraint.weights();
  double prev_f = -1e300, prev_dist = 1e300;
  for (double lam : {0.0, 1.0, 10.0, 100.0}) {
    IntervalMinimizer m = singleton_interval_minimizer(1.0, lam);
    double fv = model.objective->value(average(m.point, w));
    double dd = dist_diag_sq(m.point, w);
    CHECK(fv >= prev_f - 1e-12);
    CHECK(dd <= prev_dist + 1e-12);
    prev_f = fv;
    prev_dist = dd;
  }
}
