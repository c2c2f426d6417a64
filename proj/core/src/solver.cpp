#include "ncpgd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "ncpgd/errors.hpp"

namespace ncpgd {

void SolverConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("solver config: " + what); };
  if (!(alpha_min > 0) || !(alpha_min <= alpha_max) || !std::isfinite(alpha_max)) {
    fail(fmt::format("need 0 < alpha_min <= alpha_max < inf (got {}, {})", alpha_min, alpha_max));
  }
  if (!(beta > 0 && beta < 1)) fail(fmt::format("beta must lie in (0, 1), got {}", beta));
  if (!(c > 0 && c < 1)) fail(fmt::format("c must lie in (0, 1), got {}", c));
  if (const auto* avg = std::get_if<AverageRule>(&rule); avg && !(avg->weight > 0 && avg->weight <= 1)) {
    fail(fmt::format("average weight p must lie in (0, 1], got {}", avg->weight));
  }
  if (const auto* fixed = std::get_if<FixedStep>(&initial_step);
      fixed && !(fixed->alpha >= alpha_min && fixed->alpha <= alpha_max)) {
    fail(fmt::format("fixed step {} outside [{}, {}]", fixed->alpha, alpha_min, alpha_max));
  }
  if (!(stat_tol > 0)) fail("stat_tol must be positive");
  if (max_iters == 0) fail("max_iters must be positive");
  if (max_backtracks == 0) fail("max_backtracks must be positive");
}

double SolverConfig::initial_alpha() const {
  if (const auto* fixed = std::get_if<FixedStep>(&initial_step)) return fixed->alpha;
  return alpha_max;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::StationaryAtTol:
      return "StationaryAtTol";
    case Termination::MaxIters:
      return "MaxIters";
    case Termination::BacktrackFailure:
      return "BacktrackFailure";
  }
  return "unknown";
}

double mu_update_max(std::span<const double> f_history, std::size_t i, std::size_t l) {
  if (i >= f_history.size()) throw std::out_of_range("mu_update_max: history shorter than i + 1");
  const std::size_t first = i > l ? i - l : 0;
  return *std::max_element(f_history.begin() + static_cast<std::ptrdiff_t>(first),
                           f_history.begin() + static_cast<std::ptrdiff_t>(i) + 1);
}

double mu_update_average(double mu_prev, double f_xi, double p) { return (1.0 - p) * mu_prev + p * f_xi; }

namespace {

// Backtracking loop shared by both methods: y(alpha) = P_C(x + alpha d).
StepResult backtrack(const FeasibleSet& set, const Objective& obj, const Point& x, const Point& grad,
                     const Point& direction, double reference, const SolverConfig& cfg) {
  const double alpha0 = cfg.initial_alpha();
  for (std::size_t k = 0;; ++k) {
    const double alpha = alpha0 * std::pow(cfg.beta, static_cast<double>(k));
    Point y = set.project(x + alpha * direction);
    const double lhs = obj.eval(y);
    const double rhs = reference + cfg.c * inner(grad, y - x);
    if (lhs <= rhs) return {std::move(y), alpha, k, lhs, rhs};
    if (k + 1 > cfg.max_backtracks) {
      throw BacktrackFailure(fmt::format("Armijo condition not met after {} backtracks (alpha = {:.3e})", k, alpha));
    }
  }
}

void require_start(const FeasibleSet& set, const Point& x) {
  if (!set.contains(x)) throw InfeasiblePointError(set.spec() + ": iterate is not in the feasible set");
}

}  // namespace

StepResult pgd_map(const FeasibleSet& set, const Objective& obj, const Point& x, double mu, const SolverConfig& cfg) {
  cfg.validate();
  require_start(set, x);
  const double fx = obj.eval(x);
  if (mu < fx - 1e-12 * (1.0 + std::abs(fx))) {
    throw std::invalid_argument(fmt::format("pgd_map: mu = {} is below f(x) = {}", mu, fx));
  }
  const Point g = obj.grad(x);
  return backtrack(set, obj, x, g, -g, mu, cfg);
}

StepResult p2gd_map(const FeasibleSet& set, const Objective& obj, const Point& x, const SolverConfig& cfg) {
  cfg.validate();
  require_start(set, x);
  const Point g = obj.grad(x);
  const Point d = set.project_tangent(x, -g);
  return backtrack(set, obj, x, g, d, obj.eval(x), cfg);
}

namespace {

struct Measure {
  double value;
  bool witness;
  bool stationary;
};

Measure measure_at(const FeasibleSet& set, const Point& x, const Point& neg_grad, const SolverConfig& cfg) {
  const bool proximal = cfg.stationarity == StationarityMode::ProximalWitness;
  const double d = proximal ? set.dist_proximal_normal(x, neg_grad) : set.dist_regular_normal(x, neg_grad);
  bool witness = false;
  if (d <= cfg.stat_tol) {
    static const std::vector<double> alphas = default_witness_alphas();
    witness = static_cast<bool>(in_proximal_normal_witness(set, x, neg_grad, alphas, cfg.stat_tol));
  }
  bool stationary = d <= cfg.stat_tol;
  if (proximal) stationary = stationary && witness && set.in_proximal_normal(x, neg_grad, cfg.stat_tol);
  return {d, witness, stationary};
}

void record(Trace& t, const Point& x, double f, double mu, double alpha, std::size_t bt, const Measure& m) {
  t.iterates.push_back(x);
  t.f_values.push_back(f);
  t.mu_values.push_back(mu);
  t.alphas.push_back(alpha);
  t.backtrack_counts.push_back(bt);
  t.stat_measures.push_back(m.value);
  t.proximal_witness.push_back(m.witness);
}

}  // namespace

Trace pgd(const FeasibleSet& set, const Objective& obj, const Point& x0, const SolverConfig& cfg) {
  cfg.validate();
  require_start(set, x0);

  Trace trace;
  Point x = x0;
  double mu_prev = obj.eval(x0);
  double alpha_in = 0.0;
  std::size_t bt_in = 0;

  for (std::size_t i = 0;; ++i) {
    const double fx = obj.eval(x);
    const Point g = obj.grad(x);
    const Measure m = measure_at(set, x, -g, cfg);

    record(trace, x, fx, fx, alpha_in, bt_in, m);
    double mu = fx;
    if (const auto* max_rule = std::get_if<MaxRule>(&cfg.rule)) {
      mu = mu_update_max(trace.f_values, i, max_rule->window);
    } else {
      mu = mu_update_average(mu_prev, fx, std::get<AverageRule>(cfg.rule).weight);
    }
    // Rounding in the average rule must not push mu below f(x).
    mu = std::max(mu, fx);
    mu_prev = mu;
    trace.mu_values.back() = mu;

    if (m.stationary) {
      trace.termination = Termination::StationaryAtTol;
      break;
    }
    if (i == cfg.max_iters) {
      trace.termination = Termination::MaxIters;
      break;
    }
    try {
      StepResult step = backtrack(set, obj, x, g, -g, mu, cfg);
      x = std::move(step.y);
      alpha_in = step.alpha_accepted;
      bt_in = step.backtracks;
    } catch (const BacktrackFailure&) {
      trace.termination = Termination::BacktrackFailure;
      break;
    }
  }
  return trace;
}

Trace p2gd(const FeasibleSet& set, const Objective& obj, const Point& x0, const SolverConfig& cfg) {
  cfg.validate();
  require_start(set, x0);

  Trace trace;
  Point x = x0;
  double alpha_in = 0.0;
  std::size_t bt_in = 0;

  for (std::size_t i = 0;; ++i) {
    const double fx = obj.eval(x);
    const Point g = obj.grad(x);
    const Point direction = set.project_tangent(x, -g);
    Measure m = measure_at(set, x, -g, cfg);
    record(trace, x, fx, fx, alpha_in, bt_in, m);

    if (norm(direction) <= cfg.stat_tol) {
      trace.termination = Termination::StationaryAtTol;
      break;
    }
    if (i == cfg.max_iters) {
      trace.termination = Termination::MaxIters;
      break;
    }
    try {
      StepResult step = backtrack(set, obj, x, g, direction, fx, cfg);
      x = std::move(step.y);
      alpha_in = step.alpha_accepted;
      bt_in = step.backtracks;
    } catch (const BacktrackFailure&) {
      trace.termination = Termination::BacktrackFailure;
      break;
    }
  }
  return trace;
}

}  // namespace ncpgd
