#include "scg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scg {

double average_sets_distance_sq(const ProductPoint& x, const ProductConstraint& pc) {
  const Weights& w = pc.weights();
  if (x.block_count() != pc.count()) throw DimensionError("average_sets_distance_sq: block count mismatch");
  const Point ax = average(x, w);
  double out = 0.0;
  for (std::size_t i = 0; i < pc.count(); ++i) out += w[i] * (ax - pc.set(i).project(ax)).squaredNorm();
  return out;
}

ConsensusDecomposition consensus_decomposition(const ProductPoint& x, const ProductConstraint& pc) {
  const Weights& w = pc.weights();
  const Point ax = average(x, w);

  // y = diagonal projection of x; p = blockwise projection of y, which is the
  // blockwise projection of the average.
  std::vector<Point> p_blocks;
  p_blocks.reserve(pc.count());
  for (std::size_t i = 0; i < pc.count(); ++i) p_blocks.push_back(pc.set(i).project(ax));
  const ProductPoint p(std::move(p_blocks));
  const ProductPoint y = proj_diag(x, w);

  ConsensusDecomposition out;
  out.d_value = average_sets_distance_sq(x, pc);
  out.dist_sq = dist_diag_sq(x, w);
  double offset_sq = 0.0, cross = 0.0;
  for (std::size_t i = 0; i < pc.count(); ++i) {
    offset_sq += w[i] * (x[i] - p[i]).squaredNorm();
    cross += w[i] * (x[i] - p[i]).dot(y[i] - p[i]);
  }
  out.offset_sq = offset_sq;
  out.cross_inner = cross;
  out.residual = std::abs(out.d_value - (out.dist_sq - out.offset_sq + 2.0 * cross));
  return out;
}

FeasibilityFlags feasibility_flags(const ProductPoint& x, const ProductConstraint& pc, double tol) {
  const Weights& w = pc.weights();
  const Point ax = average(x, w);

  FeasibilityFlags flags;
  flags.zero_set_distance = true;
  flags.average_feasible = true;
  for (std::size_t i = 0; i < pc.count(); ++i) {
    if ((ax - pc.set(i).project(ax)).norm() > tol) flags.zero_set_distance = false;
    if (!pc.set(i).membership(ax, tol)) flags.average_feasible = false;
  }
  flags.diagonal_projection_feasible = pc.membership(proj_diag(x, w), tol);
  return flags;
}

PenaltyReport penalty_report(const ProductPoint& x, const ProductConstraint& pc,
                             const ConstraintSet& intersection) {
  const Weights& w = pc.weights();
  const Point ax = average(x, w);
  const Point p = intersection.project(ax);

  PenaltyReport out;
  out.dist_sq = dist_diag_sq(x, w);
  out.d_value = average_sets_distance_sq(x, pc);
  out.g_value = (ax - p).squaredNorm();
  double lhs = 0.0;
  for (std::size_t i = 0; i < pc.count(); ++i) lhs += w[i] * (x[i] - p).squaredNorm();
  out.orthogonal_decomposition_residual = std::abs(lhs - out.g_value - out.dist_sq);
  return out;
}

namespace {

constexpr double kGridMembershipTol = 1e-9;
constexpr std::size_t kMaxGridPoints = 10'000'000;

// Feasible grid points of one set, enumerated over its bounding box.
std::vector<Point> feasible_grid(const ConstraintSet& set, std::size_t points_per_axis) {
  if (points_per_axis < 2) throw ValidationError("grid oracle: need at least 2 points per axis");
  Point lo, hi;
  set.bounding_box(lo, hi);
  const Eigen::Index n = set.dim();
  if (n > 3) throw ValidationError("grid oracle: dimension above 3 is not enumerable");

  std::vector<std::size_t> axis_points(static_cast<std::size_t>(n));
  std::size_t total = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    axis_points[static_cast<std::size_t>(k)] = (hi[k] - lo[k] <= 0.0) ? 1 : points_per_axis;
    total *= axis_points[static_cast<std::size_t>(k)];
    if (total > kMaxGridPoints) throw ValidationError("grid oracle: instance too large");
  }

  std::vector<Point> out;
  out.reserve(total);
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  Point pt(n);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const std::size_t nk = axis_points[static_cast<std::size_t>(k)];
      pt[k] = (nk == 1) ? lo[k]
                        : lo[k] + (hi[k] - lo[k]) * static_cast<double>(idx[static_cast<std::size_t>(k)]) /
                              static_cast<double>(nk - 1);
    }
    if (set.membership(pt, kGridMembershipTol)) out.push_back(pt);
    // odometer
    for (Eigen::Index k = n - 1; k >= 0; --k) {
      std::size_t& v = idx[static_cast<std::size_t>(k)];
      if (++v < axis_points[static_cast<std::size_t>(k)]) break;
      v = 0;
    }
  }
  return out;
}

double grid_resolution(const ConstraintSet& set, std::size_t points_per_axis) {
  Point lo, hi;
  set.bounding_box(lo, hi);
  double h = 0.0;
  for (Eigen::Index k = 0; k < set.dim(); ++k)
    h = std::max(h, (hi[k] - lo[k]) / static_cast<double>(points_per_axis - 1));
  return h;
}

}  // namespace

InterpolationBounds interpolation_bounds(const SmoothObjective& f, const ProductConstraint& pc,
                                         double lambda, std::size_t points_per_axis) {
  if (pc.count() > 3) throw ValidationError("grid oracle: more than 3 blocks is not enumerable");
  if (lambda < 0.0) throw ValidationError("grid oracle: lambda must be nonnegative");
  const Weights& w = pc.weights();

  std::vector<std::vector<Point>> grids;
  grids.reserve(pc.count());
  std::size_t total = 1;
  double h = 0.0, diam = 0.0;
  for (std::size_t i = 0; i < pc.count(); ++i) {
    grids.push_back(feasible_grid(pc.set(i), points_per_axis));
    if (grids.back().empty()) throw ValidationError("grid oracle: no feasible grid point in a block");
    total *= grids.back().size();
    if (total > kMaxGridPoints) throw ValidationError("grid oracle: instance too large");
    h = std::max(h, grid_resolution(pc.set(i), points_per_axis));
    diam = std::max(diam, pc.set(i).diameter());
  }

  InterpolationBounds out;
  const double radius = std::max(pc.minkowski_norm_bound(), [&] {
    double r = 0.0;
    for (std::size_t i = 0; i < pc.count(); ++i) r = std::max(r, pc.set(i).norm_bound());
    return r;
  }());
  const double beta = f.gradient_norm_bound(radius);
  out.tolerance = h * (beta + lambda * diam);

  // One pass over the product grid covers both the penalized infimum and the
  // Minkowski-sum infimum (the latter is the lambda = 0 evaluation).
  double best_pen = std::numeric_limits<double>::infinity();
  double best_mink = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> idx(pc.count(), 0);
  std::vector<Point> blocks(pc.count());
  ProductPoint argmin;
  for (;;) {
    for (std::size_t i = 0; i < pc.count(); ++i) blocks[i] = grids[i][idx[i]];
    ProductPoint x(blocks);
    const Point ax = average(x, w);
    const double fval = f.value(ax);
    best_mink = std::min(best_mink, fval);
    const double pen = fval + 0.5 * lambda * dist_diag_sq(x, w);
    if (pen < best_pen) {
      best_pen = pen;
      argmin = x;
    }
    std::size_t k = pc.count();
    for (;;) {
      if (k == 0) goto done;
      --k;
      if (++idx[k] < grids[k].size()) break;
      idx[k] = 0;
    }
  }
done:
  out.penalized_inf = best_pen;
  out.minkowski_inf = best_mink;
  out.penalized_argmin = argmin;

  // Intersection infimum: points of the first block's grid that belong to
  // every set.
  double best_inter = std::numeric_limits<double>::infinity();
  bool found = false;
  for (const Point& pt : grids[0]) {
    bool in_all = true;
    for (std::size_t i = 1; i < pc.count() && in_all; ++i)
      if (!pc.set(i).membership(pt, kGridMembershipTol)) in_all = false;
    if (!in_all) continue;
    found = true;
    best_inter = std::min(best_inter, f.value(pt));
  }
  if (!found) throw ValidationError("grid oracle: no grid point lies in the intersection");
  out.intersection_inf = best_inter;
  return out;
}

std::vector<double> penalized_infima(const SmoothObjective& f, const ProductConstraint& pc,
                                     const std::vector<double>& lambdas, std::size_t points_per_axis) {
  std::vector<double> out;
  out.reserve(lambdas.size());
  for (double lam : lambdas) out.push_back(interpolation_bounds(f, pc, lam, points_per_axis).penalized_inf);
  return out;
}

IntervalMinimizer singleton_interval_minimizer(double z, double lambda) {
  if (z < 0.0) throw ValidationError("interval model: z must be nonnegative");
  if (lambda < 0.0) throw ValidationError("interval model: lambda must be nonnegative");
  IntervalMinimizer out;
  Point b1(1), b2(1);
  b1[0] = z;
  b2[0] = (lambda - 1.0) * z / (1.0 + lambda);
  out.point = ProductPoint({b1, b2});
  out.average = lambda * z / (1.0 + lambda);
  return out;
}

IntervalModel make_interval_model(double z) {
  if (z < 0.0) throw ValidationError("interval model: z must be nonnegative");
  Point b = Point::Zero(1);
  Point zp(1), lo(1), hi(1);
  zp[0] = z;
  lo[0] = -z - 1.0;
  hi[0] = z + 1.0;
  return IntervalModel{make_quadratic(b),
                       ProductConstraint({make_singleton(zp), make_box(lo, hi)}, Weights::uniform(2))};
}

PairBoundSlack diameter_bound_slack(const ProductPoint& x, const ProductPoint& y,
                                    const ProductConstraint& pc) {
  const Weights& w = pc.weights();
  const double R = pc.weighted_diameter_sq();
  PairBoundSlack out;
  out.dist_slack = R - dist_diag_sq(x, w);
  double pair = 0.0;
  for (std::size_t i = 0; i < x.block_count(); ++i) pair += w[i] * (x[i] - y[i]).squaredNorm();
  out.pair_slack = R - pair;
  return out;
}

RecurrenceReport interval_recurrence_report(const std::vector<IterationRecord>& trace, double z,
                                            double lambda0) {
  if (trace.empty()) throw ValidationError("recurrence report: empty trace");
  IntervalModel model = make_interval_model(z);
  const Weights& w = model.constraint.weights();
  const double R = model.constraint.weighted_diameter_sq();
  const double L_f = model.objective->lipschitz();

  auto subproblem_optimum = [&](double lambda) {
    PenalizedObjective F(model.objective, lambda, w);
    return F.value(singleton_interval_minimizer(z, lambda).point);
  };

  RecurrenceReport out;
  out.max_recurrence_violation = -std::numeric_limits<double>::infinity();
  out.max_envelope_violation = -std::numeric_limits<double>::infinity();

  std::vector<double> H(trace.size());
  for (std::size_t t = 0; t < trace.size(); ++t) {
    H[t] = trace[t].F_value - subproblem_optimum(trace[t].lambda);
    const double env = rate_envelope_convex(t, lambda0, L_f, R);
    out.max_envelope_violation = std::max(out.max_envelope_violation, H[t] - env);
  }
  for (std::size_t t = 0; t + 1 < trace.size(); ++t) {
    const double rhs = (1.0 - trace[t].gamma) * H[t] +
                       0.5 * (trace[t + 1].lambda - trace[t].lambda) * R +
                       0.5 * trace[t].gamma * trace[t].gamma * (trace[t].lambda + L_f) * R;
    out.max_recurrence_violation = std::max(out.max_recurrence_violation, H[t + 1] - rhs);
    ++out.steps_checked;
  }
  return out;
}

GapChain stationarity_gap_chain(const SmoothObjective& f, const ProductConstraint& pc,
                                const ConstraintSet& intersection, double lambda,
                                const ProductPoint& x) {
  const Weights& w = pc.weights();
  GapChain out;

  const Point ax = average(x, w);
  const Point g = f.gradient(ax);
  double gap = 0.0;
  for (std::size_t i = 0; i < pc.count(); ++i) {
    const Point dir = g + lambda * (x[i] - ax);
    gap += w[i] * dir.dot(x[i] - pc.set(i).lmo(dir));
  }
  out.subproblem_gap = gap;
  out.intersection_gap = g.dot(ax - intersection.lmo(g));
  out.penalty_term = lambda * dist_diag_sq(x, w);
  out.beta_bound = f.gradient_norm_bound(pc.minkowski_norm_bound()) * pc.weighted_diameter();
  return out;
}

}  // namespace scg
