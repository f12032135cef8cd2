#ifndef SCG_VERIFY_HPP
#define SCG_VERIFY_HPP

#include <string>
#include <vector>

namespace scg {

// Named diagnostic suites behind the `verify` CLI subcommand. Each check is
// a concrete predicate over a desk-scale instance; suites never skip silently
// (a missing capability is a failed check).
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass = true;
};

std::vector<std::string> verify_suite_names();  // geometry, interpolation, rates, all
SuiteReport run_verify_suite(const std::string& name);

}  // namespace scg

#endif  // SCG_VERIFY_HPP
