#include "scg/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace scg {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError("config: " + msg); }

const json& need(const json& j, const char* key, const char* ctx) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string(ctx) + ": missing key '" + key + "'");
  return *it;
}

Point parse_vector(const json& j, const char* ctx) {
  if (!j.is_array() || j.empty()) fail(std::string(ctx) + ": expected a nonempty array of numbers");
  Point v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index k = 0;
  for (const auto& e : j) {
    if (!e.is_number()) fail(std::string(ctx) + ": expected numbers");
    v[k++] = e.get<double>();
  }
  return v;
}

Matrix parse_matrix(const json& j, const char* ctx) {
  if (!j.is_array() || j.empty()) fail(std::string(ctx) + ": expected a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  if (cols == 0) fail(std::string(ctx) + ": expected rows of numbers");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != cols) fail(std::string(ctx) + ": ragged rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c].get<double>();
  }
  return m;
}

// Accepts either an inline array or a path under "<key>_csv".
Matrix matrix_field(const json& j, const std::string& key, const char* ctx) {
  if (j.contains(key)) return parse_matrix(j.at(key), ctx);
  const std::string csv_key = key + "_csv";
  if (j.contains(csv_key)) return load_matrix_csv(j.at(csv_key).get<std::string>());
  fail(std::string(ctx) + ": expected '" + key + "' or '" + csv_key + "'");
}

Point vector_field(const json& j, const std::string& key, const char* ctx) {
  if (j.contains(key)) return parse_vector(j.at(key), ctx);
  const std::string csv_key = key + "_csv";
  if (j.contains(csv_key)) {
    Matrix m = load_matrix_csv(j.at(csv_key).get<std::string>());
    if (m.rows() == 1) return m.row(0).transpose();
    if (m.cols() == 1) return m.col(0);
    fail(std::string(ctx) + ": CSV for '" + key + "' must be a single row or column");
  }
  fail(std::string(ctx) + ": expected '" + key + "' or '" + csv_key + "'");
}

ObjectivePtr parse_objective(const json& j) {
  const std::string kind = need(j, "kind", "objective").get<std::string>();
  if (kind == "quadratic") return make_quadratic(vector_field(j, "b", "objective.quadratic"));
  if (kind == "least_squares")
    return make_least_squares(matrix_field(j, "M", "objective.least_squares"),
                              vector_field(j, "b", "objective.least_squares"));
  if (kind == "indefinite_quadratic")
    return make_indefinite_quadratic(matrix_field(j, "Q", "objective.indefinite_quadratic"),
                                     vector_field(j, "q", "objective.indefinite_quadratic"));
  fail("objective: unknown kind '" + kind + "'");
}

SetPtr parse_set(const json& j) {
  const std::string kind = need(j, "kind", "set").get<std::string>();
  if (kind == "singleton") return make_singleton(parse_vector(need(j, "point", "set.singleton"), "point"));
  if (kind == "box")
    return make_box(parse_vector(need(j, "lower", "set.box"), "lower"),
                    parse_vector(need(j, "upper", "set.box"), "upper"));
  if (kind == "l1_ball") {
    double radius = need(j, "radius", "set.l1_ball").get<double>();
    Point center = j.contains("center") ? parse_vector(j.at("center"), "center")
                                        : Point(Point::Zero(need(j, "dim", "set.l1_ball").get<Eigen::Index>()));
    return make_l1_ball(radius, std::move(center));
  }
  if (kind == "simplex") return make_simplex(need(j, "dim", "set.simplex").get<Eigen::Index>());
  if (kind == "euclidean_ball") {
    double radius = need(j, "radius", "set.euclidean_ball").get<double>();
    Point center = j.contains("center")
                       ? parse_vector(j.at("center"), "center")
                       : Point(Point::Zero(need(j, "dim", "set.euclidean_ball").get<Eigen::Index>()));
    return make_euclidean_ball(radius, std::move(center));
  }
  if (kind == "nuclear_ball")
    return make_nuclear_ball(need(j, "radius", "set.nuclear_ball").get<double>(),
                             need(j, "rows", "set.nuclear_ball").get<Eigen::Index>(),
                             need(j, "cols", "set.nuclear_ball").get<Eigen::Index>());
  if (kind == "spectrahedron") return make_spectrahedron(need(j, "order", "set.spectrahedron").get<Eigen::Index>());
  if (kind == "birkhoff") return make_birkhoff(need(j, "order", "set.birkhoff").get<Eigen::Index>());
  fail("set: unknown kind '" + kind + "'");
}

}  // namespace

Matrix load_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("matrix csv: cannot open '" + path.string() + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      try {
        row.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw ValidationError("matrix csv: bad number '" + field + "' in '" + path.string() + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ValidationError("matrix csv: ragged rows in '" + path.string() + "'");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError("matrix csv: empty file '" + path.string() + "'");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

ProblemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ValidationError("config: parse error in '" + path.string() + "': " + e.what());
  }
  return config_from_json(std::move(j));
}

ProblemConfig config_from_json(json j) {
  // Validate eagerly so failures surface before any output file is created.
  ProblemConfig cfg{std::move(j)};
  build_problem(cfg);
  return cfg;
}

Problem build_problem(const ProblemConfig& config) {
  const json& j = config.echo;
  if (!j.is_object()) fail("expected a JSON object");

  ObjectivePtr objective = parse_objective(need(j, "objective", "config"));

  const json& jsets = need(j, "sets", "config");
  if (!jsets.is_array() || jsets.empty()) fail("sets: expected a nonempty array");
  std::vector<SetPtr> sets;
  for (const auto& js : jsets) sets.push_back(parse_set(js));

  const json& jw = need(j, "weights", "config");
  std::vector<double> omega;
  for (const auto& e : jw) omega.push_back(e.get<double>());
  if (omega.size() != sets.size()) fail("weights: length must equal the number of sets");
  Weights weights(omega);

  ProductConstraint constraint(std::move(sets), std::move(weights));
  if (objective->dim() != constraint.dim()) fail("objective dimension does not match set dimension");

  const json& jsched = need(j, "schedule", "config");
  Schedule schedule(schedule_kind_from_name(need(jsched, "kind", "schedule").get<std::string>()),
                    need(jsched, "lambda0", "schedule").get<double>());

  const std::size_t max_iters = need(j, "max_iters", "config").get<std::size_t>();
  if (max_iters < 1) fail("max_iters must be at least 1");
  const std::uint64_t seed = j.value("seed", std::uint64_t{0});

  ProductPoint x0;
  if (j.contains("x0") && j.at("x0").is_object() && j.at("x0").value("mode", "sample") == std::string("blocks")) {
    const json& jb = need(j.at("x0"), "blocks", "x0");
    std::vector<Point> blocks;
    for (const auto& e : jb) blocks.push_back(parse_vector(e, "x0.blocks"));
    x0 = ProductPoint(std::move(blocks));
    if (x0.block_count() != constraint.count()) fail("x0: block count must equal the number of sets");
  } else {
    x0 = constraint.random_feasible(seed);
  }

  std::optional<StoppingRule> stop;
  if (j.contains("stop")) {
    StoppingRule rule;
    rule.epsilon_gap = j.at("stop").value("epsilon_gap", rule.epsilon_gap);
    rule.epsilon_feasibility = j.at("stop").value("epsilon_feasibility", rule.epsilon_feasibility);
    stop = rule;
  }

  SolverKind solver = SolverKind::split;
  const std::string solver_name = j.value("solver", "split");
  if (solver_name == "classical") {
    if (constraint.count() != 1) fail("solver 'classical' requires exactly one set");
    solver = SolverKind::classical;
  } else if (solver_name != "split") {
    fail("solver: unknown kind '" + solver_name + "' (expected 'split' or 'classical')");
  }

  return Problem{std::move(objective), std::move(constraint), schedule, std::move(x0),
                 max_iters,            seed,                  stop,     solver};
}

SolveResult solve_problem(const Problem& problem, const TraceObserver& observer) {
  if (problem.solver == SolverKind::classical)
    return vanilla_cg_solve(*problem.objective, problem.constraint.set(0), problem.schedule,
                            problem.x0[0], problem.max_iters, problem.stop, observer);
  return scg_solve(*problem.objective, problem.constraint, problem.schedule, problem.x0,
                   problem.max_iters, problem.stop, observer);
}

ProblemConfig apply_overrides(ProblemConfig config, const Overrides& o) {
  json j = std::move(config.echo);
  if (o.max_iters) j["max_iters"] = *o.max_iters;
  if (o.lambda0) j["schedule"]["lambda0"] = *o.lambda0;
  if (o.schedule) j["schedule"]["kind"] = *o.schedule;
  if (o.seed) j["seed"] = *o.seed;
  return config_from_json(std::move(j));
}

std::vector<std::string> builtin_names() {
  return {"interval", "sparse-low-rank", "minkowski", "nonconvex-box"};
}

namespace {

json vector_json(const Point& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

// Two singleton/interval blocks; lambda0 is sized so the run lands within
// 1e-2 of the constrained optimum at the default horizon.
json interval_builtin() {
  return json{{"name", "interval"},
              {"objective", {{"kind", "quadratic"}, {"b", {0.0}}}},
              {"sets",
               {{{"kind", "singleton"}, {"point", {1.0}}},
                {{"kind", "box"}, {"lower", {-2.0}}, {"upper", {2.0}}}}},
              {"weights", {0.5, 0.5}},
              {"schedule", {{"kind", "convex"}, {"lambda0", 24.0}}},
              {"max_iters", 100000},
              {"seed", 1},
              {"x0", {{"mode", "blocks"}, {"blocks", {{1.0}, {1.0}}}}}};
}

json minkowski_builtin() {
  return json{{"name", "minkowski"},
              {"objective", {{"kind", "quadratic"}, {"b", {0.9, 0.2}}}},
              {"sets",
               {{{"kind", "box"}, {"lower", {-1.0, -1.0}}, {"upper", {1.0, 1.0}}},
                {{"kind", "euclidean_ball"}, {"radius", 1.0}, {"center", {0.0, 0.0}}}}},
              {"weights", {0.5, 0.5}},
              {"schedule", {{"kind", "frozen"}, {"lambda0", 0.0}}},
              {"max_iters", 20000},
              {"seed", 2},
              {"x0", {{"mode", "sample"}}}};
}

json sparse_low_rank_builtin() {
  // 20x20 target: a rank-1 component plus a few spikes, fixed generator.
  const Eigen::Index n = 20;
  SplitMix64 rng(0x50AE5E ^ 3u);
  Point u = rng.normal_vector(n), v = rng.normal_vector(n);
  u /= u.norm();
  v /= v.norm();
  Matrix b = 1.5 * u * v.transpose();
  for (int s = 0; s < 5; ++s) {
    Eigen::Index r = static_cast<Eigen::Index>(rng.next() % static_cast<std::uint64_t>(n));
    Eigen::Index c = static_cast<Eigen::Index>(rng.next() % static_cast<std::uint64_t>(n));
    b(r, c) += (rng.uniform() < 0.5 ? -1.0 : 1.0);
  }
  Point flat(n * n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) flat[r * n + c] = b(r, c);

  return json{{"name", "sparse-low-rank"},
              {"objective", {{"kind", "quadratic"}, {"b", vector_json(flat)}}},
              {"sets",
               {{{"kind", "l1_ball"}, {"radius", 4.0}, {"dim", n * n}},
                {{"kind", "nuclear_ball"}, {"radius", 3.0}, {"rows", n}, {"cols", n}}}},
              {"weights", {0.5, 0.5}},
              {"schedule", {{"kind", "convex"}, {"lambda0", 2.0}}},
              {"max_iters", 20000},
              {"seed", 3},
              {"x0", {{"mode", "sample"}}}};
}

json nonconvex_box_builtin() {
  // Symmetric indefinite quadratic over box intersect l1 ball, n = 10.
  const Eigen::Index n = 10;
  SplitMix64 rng(0x6C0FFEE ^ 4u);
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = rng.uniform(-1.0, 1.0);
  Matrix q = 0.5 * (m + m.transpose());
  Point lin = 0.1 * rng.uniform_vector(n, -1.0, 1.0);

  return json{{"name", "nonconvex-box"},
              {"objective", {{"kind", "indefinite_quadratic"}, {"Q", matrix_json(q)}, {"q", vector_json(lin)}}},
              {"sets",
               {{{"kind", "box"}, {"lower", vector_json(Point::Constant(n, -0.25))},
                 {"upper", vector_json(Point::Constant(n, 0.25))}},
                {{"kind", "l1_ball"}, {"radius", 0.25}, {"dim", n}}}},
              {"weights", {0.5, 0.5}},
              {"schedule", {{"kind", "nonconvex"}, {"lambda0", 0.5}}},
              {"max_iters", 100000},
              {"seed", 4},
              {"x0", {{"mode", "blocks"}, {"blocks", {vector_json(Point::Zero(n)), vector_json(Point::Zero(n))}}}}};
}

}  // namespace

ProblemConfig builtin_config(const std::string& name) {
  json j;
  if (name == "interval") {
    j = interval_builtin();
  } else if (name == "sparse-low-rank") {
    j = sparse_low_rank_builtin();
  } else if (name == "minkowski") {
    j = minkowski_builtin();
  } else if (name == "nonconvex-box") {
    j = nonconvex_box_builtin();
  } else {
    std::string names;
    for (const auto& n : builtin_names()) names += (names.empty() ? "" : ", ") + n;
    throw ValidationError("unknown builtin '" + name + "'; available: " + names);
  }
  return config_from_json(std::move(j));
}

}  // namespace scg
