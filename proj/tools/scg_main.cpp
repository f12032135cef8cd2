#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "scg/config.hpp"
#include "scg/trace_io.hpp"
#include "scg/verify.hpp"
#include "scg/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

fs::path resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("SCG_OUT_DIR"); env && *env) return env;
  return ".";
}

// Runs one experiment and writes <name>_trace.csv and <name>_summary.json.
// The per-row wall_nanos column is written as zero so traces are
// byte-reproducible; timing lives in the summary.
int run_problem(const scg::ProblemConfig& config, const std::string& name, const fs::path& out_dir) {
  scg::Problem problem = scg::build_problem(config);
  fs::create_directories(out_dir);

  const fs::path trace_path = out_dir / (name + "_trace.csv");
  const fs::path summary_path = out_dir / (name + "_summary.json");

  scg::TraceWriter writer(trace_path);
  auto observer = [&](const scg::IterationRecord& rec) {
    scg::IterationRecord row = rec;
    row.wall_nanos = 0;
    writer.write(row);
  };

  const auto start = std::chrono::steady_clock::now();
  scg::SolveResult result = scg::solve_problem(problem, observer);
  const auto wall =
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  writer.finish();

  json final_average = json::array();
  for (Eigen::Index k = 0; k < result.final_average.size(); ++k)
    final_average.push_back(result.final_average[k]);

  json summary{{"name", name},
               {"version", scg::kVersion},
               {"termination", std::string(scg::termination_name(result.termination))},
               {"iterations", result.trace.size()},
               {"wall_nanos_total", wall.count()},
               {"final",
                {{"f_value", result.final_f},
                 {"penalty", result.final_penalty},
                 {"fw_gap", result.final_fw_gap},
                 {"lambda", result.final_lambda},
                 {"average", final_average}}},
               {"config", config.echo}};

  std::ofstream out(summary_path);
  out << summary.dump(2) << '\n';
  if (!out) throw scg::Error("cannot write summary '" + summary_path.string() + "'");

  std::printf("%s: %zu iterations, termination=%s, f=%.12g, penalty=%.12g, fw_gap=%.12g\n", name.c_str(),
              result.trace.size(), std::string(scg::termination_name(result.termination)).c_str(),
              result.final_f, result.final_penalty, result.final_fw_gap);
  std::printf("trace: %s\nsummary: %s\n", trace_path.string().c_str(), summary_path.string().c_str());
  return kExitOk;
}

int run_verify(const std::string& suite, const fs::path& out_dir) {
  scg::SuiteReport report = scg::run_verify_suite(suite);
  fs::create_directories(out_dir);

  json checks = json::array();
  for (const auto& c : report.checks) {
    std::printf("[%s] %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  json j{{"suite", report.suite}, {"pass", report.pass}, {"version", scg::kVersion}, {"checks", checks}};
  const fs::path path = out_dir / ("verify_" + report.suite + ".json");
  std::ofstream out(path);
  out << j.dump(2) << '\n';
  std::printf("%s: %s (report: %s)\n", report.suite.c_str(), report.pass ? "all checks passed" : "FAILURES",
              path.string().c_str());
  return report.pass ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projection-free solver for smooth minimization over an intersection of compact convex "
               "sets, using one linear minimization oracle per set per iteration"};
  app.require_subcommand(1);

  std::string out_flag;
  std::string config_path, builtin_name, suite_name;
  scg::Overrides overrides;
  std::size_t max_iters_flag = 0;
  double lambda0_flag = 0.0;
  std::string schedule_flag;
  std::uint64_t seed_flag = 0;

  auto add_out_flag = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_flag, "Output directory (default: $SCG_OUT_DIR or .)");
  };
  auto add_override_flags = [&](CLI::App* cmd) {
    cmd->add_option("--max-iters", max_iters_flag, "Override iteration horizon");
    cmd->add_option("--lambda0", lambda0_flag, "Override schedule lambda0");
    cmd->add_option("--schedule", schedule_flag, "Override schedule kind (convex|nonconvex|frozen)");
    cmd->add_option("--seed", seed_flag, "Override sampling seed");
    add_out_flag(cmd);
  };

  CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run_cmd->add_option("config", config_path, "Path to the config file")->required();
  add_override_flags(run_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "Run a diagnostics suite");
  verify_cmd->add_option("suite", suite_name, "geometry | interpolation | rates | all")->required();
  add_out_flag(verify_cmd);

  CLI::App* builtin_cmd = app.add_subcommand("builtin", "Run a built-in experiment");
  builtin_cmd->add_option("name", builtin_name, "interval | sparse-low-rank | minkowski | nonconvex-box")
      ->required();
  add_override_flags(builtin_cmd);

  CLI11_PARSE(app, argc, argv);

  auto collect_overrides = [&](const CLI::App* cmd) {
    if (cmd->count("--max-iters") > 0) overrides.max_iters = max_iters_flag;
    if (cmd->count("--lambda0") > 0) overrides.lambda0 = lambda0_flag;
    if (cmd->count("--schedule") > 0) overrides.schedule = schedule_flag;
    if (cmd->count("--seed") > 0) overrides.seed = seed_flag;
  };

  const fs::path out_dir = resolve_out_dir(out_flag);
  try {
    if (run_cmd->parsed()) {
      collect_overrides(run_cmd);
      scg::ProblemConfig cfg = scg::apply_overrides(scg::load_config(config_path), overrides);
      return run_problem(cfg, fs::path(config_path).stem().string(), out_dir);
    }
    if (builtin_cmd->parsed()) {
      collect_overrides(builtin_cmd);
      scg::ProblemConfig cfg = scg::apply_overrides(scg::builtin_config(builtin_name), overrides);
      return run_problem(cfg, builtin_name, out_dir);
    }
    if (verify_cmd->parsed()) return run_verify(suite_name, out_dir);
  } catch (const scg::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const scg::DimensionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  }
  return kExitValidation;
}
