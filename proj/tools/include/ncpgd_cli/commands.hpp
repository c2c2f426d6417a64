#pragma once

#include <iosfwd>
#include <string>

#include "ncpgd_cli/spec.hpp"

namespace ncpgd::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInfeasible = 2,
  kExitSolverFailure = 3,
  kExitSuiteFailure = 4,
};

/// Runs the configured algorithm (pgd or p2gd) and writes the trace CSV to
/// spec.out, or to `out` when spec.out is empty. The summary line goes to
/// `out` when the CSV goes to a file and to `err` otherwise.
int cmd_solve(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);

/// Runs both algorithms from the same start. The CSV has an `algorithm`
/// column, the trace columns and the line-search target x - alpha0 grad f(x).
/// One apocalypse report line per algorithm follows, routed like the summary
/// of cmd_solve. spec.plot_data, when set, receives the figure series.
int cmd_compare(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);

/// Prints the cone report for v at x.
int cmd_cones(const std::string& set_spec, const std::string& x, const std::string& v, double tol, std::ostream& out);

int cmd_check(const std::string& suite, std::uint64_t seed, std::size_t trials, unsigned jobs, std::ostream& out);

/// Entry point shared by the executable and the tests. Maps library errors
/// onto exit codes and reports them on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncpgd::cli
