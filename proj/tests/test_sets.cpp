#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "scg/sets.hpp"

using namespace scg;

namespace {

Point vec(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) p[k++] = x;
  return p;
}

void check_lmo_against_vertices(const ConstraintSet& set, const std::vector<Point>& vertices,
                                int directions, std::uint64_t seed) {
  SplitMix64 rng(seed);
  for (int rep = 0; rep < directions; ++rep) {
    Point c = rng.uniform_vector(set.dim(), -2.0, 2.0);
    Point z = set.lmo(c);
    CHECK(set.membership(z, 1e-9));
    double best = oracles::min_vertex_value(vertices, c);
    CHECK(c.dot(z) <= best + 1e-12 * (1.0 + std::abs(best)));
  }
}

}  // namespace

TEST_CASE("oracle rules on the worked one-liners") {
  // l1 ball, radius 2: the largest-magnitude coordinate wins
  auto l1 = make_l1_ball(2.0, Point::Zero(2));
  CHECK((l1->lmo(vec({3.0, -1.0})) - vec({-2.0, 0.0})).norm() == 0.0);

  auto box = make_box(vec({-2.0}), vec({2.0}));
  CHECK(box->lmo(vec({1.0}))[0] == -2.0);

  auto simplex = make_simplex(3);
  CHECK((simplex->lmo(vec({0.5, -0.2, 0.1})) - vec({0.0, 1.0, 0.0})).norm() == 0.0);

  auto ball = make_euclidean_ball(1.0, Point::Zero(2));
  Point b = ball->lmo(vec({3.0, 4.0}));
  CHECK(b[0] == doctest::Approx(-0.6));
  CHECK(b[1] == doctest::Approx(-0.8));

  // spectrahedron with a diagonal direction picks the smallest eigenvalue
  auto spec = make_spectrahedron(2);
  Point z = spec->lmo(vec({1.0, 0.0, 0.0, -1.0}));
  CHECK(z[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(z[3] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(spec->membership(z, 1e-9));
}

TEST_CASE("vertex enumeration agreement: box, simplex, l1, assignment polytope") {
  SplitMix64 rng(31);
  Point lo = rng.uniform_vector(6, -3.0, 0.0), hi = rng.uniform_vector(6, 0.5, 3.0);
  auto box = make_box(lo, hi);
  check_lmo_against_vertices(*box, oracles::box_vertices(lo, hi), 200, 101);

  auto simplex = make_simplex(7);
  check_lmo_against_vertices(*simplex, oracles::simplex_vertices(7), 200, 102);

  Point center = rng.uniform_vector(7, -1.0, 1.0);
  auto l1 = make_l1_ball(1.5, center);
  check_lmo_against_vertices(*l1, oracles::l1_vertices(1.5, center), 200, 103);

  for (Eigen::Index n : {2, 3, 4}) {
    auto bk = make_birkhoff(n);
    check_lmo_against_vertices(*bk, oracles::birkhoff_vertices(n), 100, 104 + static_cast<std::uint64_t>(n));
  }
}

TEST_CASE("spectral oracles agree with dense decompositions") {
  const Eigen::Index n = 20;
  SplitMix64 rng(37);
  for (int rep = 0; rep < 10; ++rep) {
    Matrix c(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index col = 0; col < n; ++col) c(r, col) = rng.uniform(-1.0, 1.0);

    Point flat(n * n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index col = 0; col < n; ++col) flat[r * n + col] = c(r, col);

    const double tau = 2.5;
    auto nuclear = make_nuclear_ball(tau, n, n);
    Point z = nuclear->lmo(flat);
    CHECK(nuclear->membership(z, 1e-9));
    const double value = flat.dot(z);
    const double expected = -tau * oracles::dense_top_singular_value(c);
    CHECK(std::abs(value - expected) <= 1e-6 * std::abs(expected));

    auto spec = make_spectrahedron(n);
    Point zs = spec->lmo(flat);
    CHECK(spec->membership(zs, 1e-9));
    const double vs = flat.dot(zs);
    const double es = oracles::dense_min_eigenvalue(0.5 * (c + c.transpose()));
    CHECK(std::abs(vs - es) <= 1e-6 * std::max(1.0, std::abs(es)));
  }
}

TEST_CASE("membership") {
  auto l1 = make_l1_ball(1.0, Point::Zero(2));
  CHECK_FALSE(l1->membership(vec({0.6, 0.6}), 1e-9));
  CHECK(l1->membership(vec({0.6, 0.4}), 1e-9));

  auto bk = make_birkhoff(3);
  for (const Point& p : oracles::birkhoff_vertices(3)) CHECK(bk->membership(p, 1e-9));
  CHECK_FALSE(bk->membership(Point::Zero(9), 1e-9));

  auto spec = make_spectrahedron(2);
  CHECK(spec->membership(vec({0.5, 0.0, 0.0, 0.5}), 1e-9));
  CHECK_FALSE(spec->membership(vec({1.0, 0.0, 0.0, 1.0}), 1e-9));  // trace 2
  CHECK_FALSE(spec->membership(vec({2.0, 0.0, 0.0, -1.0}), 1e-9));  // not psd
}

TEST_CASE("positive homogeneity and zero directions") {
  SplitMix64 rng(41);
  // vertex-valued oracles are bit-identical under positive scaling
  std::vector<SetPtr> vertex_sets{make_box(vec({-1.0, -2.0}), vec({2.0, 1.0})),
                                  make_l1_ball(1.5, Point::Zero(2)), make_simplex(2),
                                  make_singleton(vec({0.5, 0.25}))};
  for (const auto& s : vertex_sets) {
    for (int rep = 0; rep < 50; ++rep) {
      Point c = rng.uniform_vector(2, -1.0, 1.0);
      Point a = s->lmo(c);
      for (double alpha : {0.5, 3.0}) CHECK((s->lmo(alpha * c) - a).norm() == 0.0);
    }
  }
  // continuous-boundary oracles agree up to rounding of the normalization
  auto ball = make_euclidean_ball(2.0, vec({1.0, -1.0}));
  for (int rep = 0; rep < 50; ++rep) {
    Point c = rng.uniform_vector(2, -1.0, 1.0);
    Point a = ball->lmo(c);
    for (double alpha : {0.5, 3.0}) CHECK((ball->lmo(alpha * c) - a).norm() <= 1e-12);
  }
  std::vector<SetPtr> all{make_box(vec({-1.0, -2.0}), vec({2.0, 1.0})), make_l1_ball(1.5, Point::Zero(2)),
                          make_simplex(2), ball, make_singleton(vec({0.5, 0.25}))};
  for (const auto& s : all) {
    // zero direction returns a feasible canonical vertex without error
    Point z0 = s->lmo(Point::Zero(2));
    CHECK(s->membership(z0, 1e-9));
    CHECK((s->lmo(Point::Zero(2)) - z0).norm() == 0.0);
  }
  auto spec = make_spectrahedron(3);
  CHECK(spec->membership(spec->lmo(Point::Zero(9)), 1e-9));
  auto nuc = make_nuclear_ball(1.0, 3, 2);
  CHECK(nuc->membership(nuc->lmo(Point::Zero(6)), 1e-9));
  auto bk = make_birkhoff(3);
  CHECK(bk->membership(bk->lmo(Point::Zero(9)), 1e-9));
}

TEST_CASE("lmo outputs stay within the diameter bound") {
  SplitMix64 rng(43);
  std::vector<SetPtr> sets{make_box(vec({-1.0, -2.0, 0.0}), vec({2.0, 1.0, 0.5})),
                           make_l1_ball(2.0, vec({0.5, 0.0, -0.5})),
                           make_simplex(3),
                           make_euclidean_ball(1.5, Point::Zero(3)),
                           make_spectrahedron(2),
                           make_nuclear_ball(1.0, 2, 2),
                           make_birkhoff(2)};
  for (const auto& s : sets) {
    for (int rep = 0; rep < 50; ++rep) {
      Point c1 = rng.uniform_vector(s->dim(), -1.0, 1.0);
      Point c2 = rng.uniform_vector(s->dim(), -1.0, 1.0);
      CHECK((s->lmo(c1) - s->lmo(c2)).norm() <= s->diameter() + 1e-9);
    }
  }
}

TEST_CASE("projection") {
  auto box = make_box(vec({-2.0}), vec({2.0}));
  CHECK(box->project(vec({5.0}))[0] == 2.0);
  CHECK(box->project(vec({0.7}))[0] == 0.7);

  auto simplex = make_simplex(3);
  Point p = simplex->project(vec({2.0, 0.0, 0.0}));
  CHECK((p - vec({1.0, 0.0, 0.0})).norm() <= 1e-12);

  // interior points are fixed
  auto l1 = make_l1_ball(1.0, Point::Zero(3));
  Point inside = vec({0.2, -0.1, 0.3});
  CHECK((l1->project(inside) - inside).norm() == 0.0);

  // the variational inequality against sampled feasible points
  SplitMix64 rng(47);
  std::vector<SetPtr> sets{make_box(vec({-1.0, 0.0}), vec({1.0, 2.0})), make_l1_ball(1.0, Point::Zero(2)),
                           make_simplex(2), make_euclidean_ball(1.0, vec({0.5, 0.5})),
                           make_singleton(vec({0.1, 0.2}))};
  for (const auto& s : sets) {
    for (int rep = 0; rep < 10; ++rep) {
      Point x = rng.uniform_vector(2, -3.0, 3.0);
      Point proj = s->project(x);
      CHECK(s->membership(proj, 1e-9));
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Point v = s->random_feasible(seed);
        CHECK((x - proj).dot(v - proj) <= 1e-9);
      }
    }
  }

  // unsupported kinds refuse
  CHECK_THROWS_AS(make_birkhoff(2)->project(Point::Zero(4)), CapabilityError);
  CHECK_THROWS_AS(make_nuclear_ball(1.0, 2, 2)->project(Point::Zero(4)), CapabilityError);
  CHECK_THROWS_AS(make_spectrahedron(2)->project(Point::Zero(4)), CapabilityError);
}

TEST_CASE("feasible samples are feasible and deterministic per seed") {
  std::vector<SetPtr> sets{make_box(vec({-1.0, -2.0}), vec({2.0, 1.0})),
                           make_l1_ball(1.5, vec({0.25, 0.0})),
                           make_simplex(4),
                           make_euclidean_ball(2.0, Point::Zero(3)),
                           make_singleton(vec({1.0, 2.0})),
                           make_nuclear_ball(2.0, 3, 3),
                           make_spectrahedron(3),
                           make_birkhoff(3)};
  for (const auto& s : sets) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Point x = s->random_feasible(seed);
      CHECK(s->membership(x, 1e-9));
      CHECK((s->random_feasible(seed) - x).norm() == 0.0);
    }
    CHECK((s->random_feasible(1) - s->random_feasible(2)).norm() >= 0.0);
  }
  auto singleton = make_singleton(vec({1.0, 2.0}));
  CHECK((singleton->random_feasible(9) - vec({1.0, 2.0})).norm() == 0.0);
}

TEST_CASE("blockwise product oracle") {
  // m = 1 reduces to the set oracle
  auto box = make_box(vec({-1.0, -1.0}), vec({1.0, 1.0}));
  ProductConstraint pc1({box}, Weights::uniform(1));
  Point c = vec({0.3, -0.7});
  ProductPoint v1 = pc1.lmo(ProductPoint({c}));
  CHECK((v1[0] - box->lmo(c)).norm() == 0.0);

  // a singleton block is pinned
  auto single = make_singleton(vec({0.5, 0.5}));
  ProductConstraint pc2({single, box}, Weights::uniform(2));
  ProductPoint v2 = pc2.lmo(ProductPoint({c, c}));
  CHECK((v2[0] - vec({0.5, 0.5})).norm() == 0.0);

  // optimality against sampled feasible competitors in the weighted metric
  SplitMix64 rng(53);
  auto l1 = make_l1_ball(1.0, Point::Zero(2));
  ProductConstraint pc({box, l1}, Weights({0.25, 0.75}));
  for (int rep = 0; rep < 10; ++rep) {
    ProductPoint dir({rng.uniform_vector(2, -1.0, 1.0), rng.uniform_vector(2, -1.0, 1.0)});
    ProductPoint v = pc.lmo(dir);
    double best = inner(dir, v, pc.weights());
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      ProductPoint cand = pc.random_feasible(seed * 71 + static_cast<std::uint64_t>(rep));
      CHECK(best <= inner(dir, cand, pc.weights()) + 1e-9);
    }
  }

  CHECK_THROWS_AS(ProductConstraint({box, make_simplex(3)}, Weights::uniform(2)), DimensionError);
  CHECK_THROWS_AS(box->lmo(vec({1.0})), DimensionError);
}

TEST_CASE("diameter aggregates") {
  auto single = make_singleton(vec({1.0}));
  auto box = make_box(vec({-2.0}), vec({2.0}));
  ProductConstraint pc({single, box}, Weights::uniform(2));
  CHECK(pc.weighted_diameter_sq() == doctest::Approx(8.0));
  CHECK(pc.weighted_diameter() == doctest::Approx(2.0));
  CHECK(pc.minkowski_norm_bound() == doctest::Approx(1.5));
}

TEST_CASE("exact assignment solver against enumeration") {
  SplitMix64 rng(59);
  for (Eigen::Index n : {1, 2, 3, 4}) {
    for (int rep = 0; rep < 50; ++rep) {
      Matrix cost(n, n);
      for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c2 = 0; c2 < n; ++c2) cost(r, c2) = rng.uniform(-5.0, 5.0);
      std::vector<int> col = solve_assignment(cost);
      double got = 0.0;
      std::vector<bool> used(static_cast<std::size_t>(n), false);
      for (Eigen::Index r = 0; r < n; ++r) {
        got += cost(r, col[static_cast<std::size_t>(r)]);
        CHECK_FALSE(used[static_cast<std::size_t>(col[static_cast<std::size_t>(r)])]);
        used[static_cast<std::size_t>(col[static_cast<std::size_t>(r)])] = true;
      }
      Point flat(n * n);
      for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c2 = 0; c2 < n; ++c2) flat[r * n + c2] = cost(r, c2);
      double best = oracles::min_vertex_value(oracles::birkhoff_vertices(n), flat);
      CHECK(got == doctest::Approx(best).epsilon(1e-12));
    }
  }
}
