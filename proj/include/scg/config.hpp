#ifndef SCG_CONFIG_HPP
#define SCG_CONFIG_HPP

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "scg/objective.hpp"
#include "scg/sets.hpp"
#include "scg/solver.hpp"

namespace scg {

// A fully validated experiment description. `echo` is the effective JSON
// (after overrides); re-running it reproduces the run bit for bit.
struct ProblemConfig {
  nlohmann::json echo;
};

ProblemConfig load_config(const std::filesystem::path& path);
ProblemConfig config_from_json(nlohmann::json j);

enum class SolverKind { split, classical };

struct Problem {
  ObjectivePtr objective;
  ProductConstraint constraint;
  Schedule schedule;
  ProductPoint x0;
  std::size_t max_iters;
  std::uint64_t seed;
  std::optional<StoppingRule> stop;
  // "classical" runs the single-set conditional gradient baseline and
  // requires exactly one set.
  SolverKind solver = SolverKind::split;
};

SolveResult solve_problem(const Problem& problem, const TraceObserver& observer = nullptr);

Problem build_problem(const ProblemConfig& config);

// Command-line overrides folded into the config before building.
struct Overrides {
  std::optional<std::size_t> max_iters;
  std::optional<double> lambda0;
  std::optional<std::string> schedule;
  std::optional<std::uint64_t> seed;
};
ProblemConfig apply_overrides(ProblemConfig config, const Overrides& o);

// Built-in experiments with pinned seeds and documented defaults.
std::vector<std::string> builtin_names();
ProblemConfig builtin_config(const std::string& name);

// Dense matrix from a CSV file of comma-separated rows.
Matrix load_matrix_csv(const std::filesystem::path& path);

}  // namespace scg

#endif  // SCG_CONFIG_HPP
