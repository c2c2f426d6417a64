#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ncpgd::cli {

struct TrialOutcome {
  bool ok = true;
  std::string detail;  ///< counterexample description when !ok
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t failed = 0;
  std::size_t first_failure = 0;  ///< index of the lowest failing trial
  std::string counterexample{};
  bool ok() const noexcept { return failed == 0; }
};

std::vector<std::string> suite_names();

/// Runs `trials` independent trials of the named suite. Trial i draws from
/// its own generator seeded from (seed, i), so the report does not depend on
/// `jobs`. Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed, std::size_t trials, unsigned jobs = 1);

/// Seed of trial i of a suite run.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

}  // namespace ncpgd::cli
