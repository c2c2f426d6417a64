#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ncpgd/instances.hpp"
#include "ncpgd/objective.hpp"
#include "ncpgd/sets.hpp"
#include "ncpgd/solver.hpp"

namespace ncpgd::cli {

/// Everything needed to reproduce one experiment. Built from a flat
/// key=value config file and then from command-line overrides, both through
/// apply_setting.
struct ExperimentSpec {
  std::string set = "sparse:n=2,s=1";
  std::string objective = "lsq:1,0";
  std::string x0 = "zero";
  SolverConfig cfg;
  std::string algorithm = "pgd";  ///< pgd, p2gd or both
  std::uint64_t seed = 0;
  std::string out;        ///< trace CSV path; empty writes to stdout
  std::string plot_data;  ///< optional figure-data CSV path
};

/// Recognized keys: set, objective, x0, alpha_min, alpha_max, alpha, beta, c,
/// rule, step, stat_tol, max_iters, max_backtracks, stationarity, algorithm,
/// seed, out, emit_plot_data. Dashes in keys are accepted as underscores.
/// Throws ParseError naming the key.
void apply_setting(ExperimentSpec& spec, std::string key, const std::string& value);

/// Applies every "key = value" line; '#' starts a comment. ParseError
/// messages carry the line number.
void apply_config_text(ExperimentSpec& spec, std::string_view text);
void apply_config_file(ExperimentSpec& spec, const std::string& path);

/// "max:l=K" or "avg:p=P" (also "average:p=P").
NonmonotoneRule parse_rule(std::string_view text);
/// "alpha-max" or "fixed:A".
InitialStep parse_step(std::string_view text);

/// "lsq:c1,c2,..." (row-major for matrices), "lsq:random", "const:V",
/// "quartic", "cubic" or "cusp".
Objective parse_objective(std::string_view text, const Shape& shape, InstanceGenerator& gen);

/// Comma-separated coordinates, "zero" or "random" (a random feasible point).
Point parse_point(std::string_view text, const FeasibleSet& set, InstanceGenerator& gen);

/// Comma-separated coordinates checked against `shape`.
Point parse_coordinates(std::string_view text, const Shape& shape, const std::string& field);

std::string format_point(const Point& x);

}  // namespace ncpgd::cli
