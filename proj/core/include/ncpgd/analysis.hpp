#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncpgd/objective.hpp"
#include "ncpgd/sets.hpp"
#include "ncpgd/solver.hpp"

namespace ncpgd {

/// Classification tolerance; ten times the default solver stat_tol so that a
/// converged run always classifies.
inline constexpr double kClassifyTol = 1e-7;

/// Strongest stationarity notion that holds within tolerance. The normal
/// cones are nested (proximal in regular in general), hence P => B => M.
enum class Stationarity { Proximal, Bouligand, MordukhovichOnly, NonStationary };

std::string to_string(Stationarity s);

struct StationarityReport {
  Point point;
  double f_value = 0.0;
  double d_regular = 0.0;  ///< d(-grad f(x), regular normal cone)
  double d_general = 0.0;  ///< d(-grad f(x), general normal cone)
  bool general_member = false;
  bool proximal_member = false;  ///< closed-form proximal cone membership
  ProximalWitness proximal_witness{};///< only attempted when d_regular <= tol
  Stationarity classification = Stationarity::NonStationary;
};

StationarityReport classify_stationarity(const FeasibleSet& set, const Objective& obj, const Point& x,
                                         double tol = kClassifyTol);

enum class MeasureKind { Regular, Proximal };

/// d(-grad f(x_i), N(x_i)) along a trace for the regular or proximal cone.
std::vector<double> stationarity_measure_series(const FeasibleSet& set, const Objective& obj, const Trace& trace,
                                                MeasureKind kind = MeasureKind::Regular);

/// Convergence to a point that is not B-stationary although the B-stationarity
/// measure vanishes along the sequence.
struct ApocalypseFlag {
  Point limit_point;
  std::vector<double> measure_along_sequence{};
  double measure_at_limit = 0.0;
  bool converged = false;
  bool flagged = false;
  std::string note{};
};

/// The limit is estimated as the mean of the last five iterates, snapped to
/// the lowest stratum within `tol`. The trace counts as converged when the
/// last five iterates have diameter < tol. Flags iff the final measure along
/// the trace is <= tol while the measure at the limit exceeds 10 tol.
ApocalypseFlag detect_apocalypse(const FeasibleSet& set, const Objective& obj, const Trace& trace, double tol);

/// Monte-Carlo lower estimate of the Lipschitz constant of grad f on the
/// closed ball B[center, radius]: the largest ||grad f(x) - grad f(y)|| / ||x - y||
/// over `samples` random pairs (half of them close pairs).
double lipschitz_probe(const Objective& obj, const Point& center, double radius, std::size_t samples,
                       std::uint64_t seed = 0x5eed);

/// Replay of the line-search postconditions along a PGD trace.
struct StepAudit {
  std::size_t steps = 0;
  std::size_t armijo_violations = 0;             ///< f(x+) > mu + c <g, x+ - x>
  std::size_t sufficient_decrease_violations = 0;  ///< f(x+) > mu - c/(2 alpha) ||x+ - x||^2
  std::size_t translation_violations = 0;        ///< projected-translation inequalities for (x, alpha g)
  std::size_t infeasible_iterates = 0;
  bool ok() const noexcept {
    return armijo_violations == 0 && sufficient_decrease_violations == 0 && translation_violations == 0 &&
           infeasible_iterates == 0;
  }
};

StepAudit audit_pgd_trace(const FeasibleSet& set, const Objective& obj, const Trace& trace, const SolverConfig& cfg);

/// Nonmonotone-rule properties of a PGD trace.
struct RuleAudit {
  bool window_max_nonincreasing = true;  ///< max rule: f(x_{g(i)}) nonincreasing
  bool mu_nonincreasing = true;          ///< average rule
  bool mu_dominates_f = true;            ///< mu_i >= f(x_i)
  bool in_initial_sublevel_set = true;   ///< f(x_i) <= f(x_0)
  bool ok() const noexcept {
    return window_max_nonincreasing && mu_nonincreasing && mu_dominates_f && in_initial_sublevel_set;
  }
};

RuleAudit audit_nonmonotone_rule(const Trace& trace, const SolverConfig& cfg);

}  // namespace ncpgd
