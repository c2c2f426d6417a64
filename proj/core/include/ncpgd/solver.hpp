#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ncpgd/objective.hpp"
#include "ncpgd/point.hpp"
#include "ncpgd/sets.hpp"

namespace ncpgd {

/// mu_i = max of f over the last l+1 iterates. l = 0 is monotone descent.
struct MaxRule {
  std::size_t window = 0;
};

/// mu_i = (1 - p) mu_{i-1} + p f(x_i). p = 1 is monotone descent.
struct AverageRule {
  double weight = 1.0;
};

using NonmonotoneRule = std::variant<MaxRule, AverageRule>;

struct FixedStep {
  double alpha = 1.0;
};
struct AlphaMaxStep {};

/// Step size that opens each backtracking loop.
using InitialStep = std::variant<FixedStep, AlphaMaxStep>;

enum class StationarityMode {
  Regular,          ///< stop on d(-grad f, regular normal cone) <= stat_tol
  ProximalWitness,  ///< additionally require a proximal-normal certificate
};

struct SolverConfig {
  double alpha_min = 1e-8;
  double alpha_max = 1.0;
  double beta = 0.5;
  double c = 1e-4;
  NonmonotoneRule rule = MaxRule{0};
  double stat_tol = 1e-8;
  std::size_t max_iters = 1000;
  std::size_t max_backtracks = 60;
  InitialStep initial_step = AlphaMaxStep{};
  StationarityMode stationarity = StationarityMode::Regular;

  /// Throws std::invalid_argument unless 0 < alpha_min <= alpha_max < inf,
  /// beta, c in (0, 1), p in (0, 1], a fixed step lies in
  /// [alpha_min, alpha_max], and the tolerances and caps are positive.
  void validate() const;
  double initial_alpha() const;
};

struct StepResult {
  Point y;
  double alpha_accepted = 0.0;  ///< alpha_0 * beta^backtracks
  std::size_t backtracks = 0;
  double armijo_lhs = 0.0;  ///< f(y)
  double armijo_rhs = 0.0;  ///< mu + c <grad f(x), y - x>
};

enum class Termination { StationaryAtTol, MaxIters, BacktrackFailure };

std::string to_string(Termination t);

/// Per-iterate record of a solver run. All vectors have one entry per
/// iterate. alphas[i] and backtrack_counts[i] describe the step that produced
/// iterate i (both 0 for the initial iterate); mu_values[i] is the reference
/// value used for the step leaving iterate i.
struct Trace {
  std::vector<Point> iterates;
  std::vector<double> f_values;
  std::vector<double> mu_values;
  std::vector<double> alphas;
  std::vector<std::size_t> backtrack_counts;
  std::vector<double> stat_measures;
  std::vector<bool> proximal_witness;
  Termination termination = Termination::MaxIters;

  std::size_t size() const noexcept { return iterates.size(); }
  bool empty() const noexcept { return iterates.empty(); }
  const Point& last() const { return iterates.back(); }
};

/// mu_i for the "max" rule: max of f_history[max(0, i - l) .. i].
double mu_update_max(std::span<const double> f_history, std::size_t i, std::size_t l);

/// mu_i for the "average" rule.
double mu_update_average(double mu_prev, double f_xi, double p);

/// One backtracking projected line search along -grad f(x):
/// y in P_C(x - alpha grad f(x)), alpha <- alpha beta until
/// f(y) <= mu + c <grad f(x), y - x>.
///
/// Requires x in C and mu >= f(x). Throws BacktrackFailure after
/// cfg.max_backtracks reductions, which in practice means x is numerically
/// stationary or the gradient is wrong.
StepResult pgd_map(const FeasibleSet& set, const Objective& obj, const Point& x, double mu, const SolverConfig& cfg);

/// Projected gradient descent with the configured nonmonotone rule. Stops
/// when the stationarity measure at the current iterate is <= stat_tol, after
/// max_iters steps, or when the line search fails.
Trace pgd(const FeasibleSet& set, const Objective& obj, const Point& x0, const SolverConfig& cfg);

/// One P2GD step: g = P_T(-grad f(x)), then backtrack over y in P_C(x + alpha g)
/// against the monotone Armijo condition f(y) <= f(x) + c <grad f(x), y - x>.
StepResult p2gd_map(const FeasibleSet& set, const Objective& obj, const Point& x, const SolverConfig& cfg);

/// Projected-projected gradient descent, the tangent-cone comparator. Stops
/// when ||P_T(-grad f(x))|| <= stat_tol or after max_iters steps; the rule
/// in cfg is ignored (the method is monotone). The recorded stationarity
/// measure is the regular-normal distance, which is reported only.
/// Throws UnsupportedOperation for sets without a tangent projection.
Trace p2gd(const FeasibleSet& set, const Objective& obj, const Point& x0, const SolverConfig& cfg);

}  // namespace ncpgd
