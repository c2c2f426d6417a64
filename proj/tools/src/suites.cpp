#include "ncpgd_cli/suites.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "ncpgd/analysis.hpp"
#include "ncpgd/instances.hpp"
#include "ncpgd/sets.hpp"
#include "ncpgd/solver.hpp"
#include "ncpgd_cli/spec.hpp"

namespace ncpgd::cli {

namespace {

using Trial = std::function<TrialOutcome(InstanceGenerator&)>;

SetPtr random_set(InstanceGenerator& gen, bool structured_only) {
  const std::size_t kinds = structured_only ? 4 : 6;
  switch (gen.index(kinds)) {
    case 0: {
      const std::size_t n = 2 + gen.index(7);
      return std::make_shared<SparseSet>(n, 1 + gen.index(n - 1));
    }
    case 1: {
      const std::size_t n = 2 + gen.index(7);
      return std::make_shared<NonnegSparseSet>(n, 1 + gen.index(n - 1));
    }
    case 2: {
      const std::size_t m = 2 + gen.index(4), n = 2 + gen.index(4);
      return std::make_shared<LowRankSet>(m, n, 1 + gen.index(std::min(m, n) - 1));
    }
    case 3: {
      const std::size_t n = 2 + gen.index(4);
      return std::make_shared<PsdLowRankSet>(n, 1 + gen.index(n - 1));
    }
    case 4:
      return std::make_shared<CurveSet>();
    default:
      return std::make_shared<EpigraphSet>();
  }
}

TrialOutcome projected_translation(InstanceGenerator& gen) {
  const SetPtr set = random_set(gen, false);
  const Point x = gen.feasible(*set);
  const Point v = gen.ambient(set->ambient_shape(), std::pow(10.0, gen.uniform(-3, 1)));
  const TranslationCheck tc = projected_translation_check(*set, x, v);
  const bool strict_ok = tc.step <= 1e-9 || (tc.distance_strict && tc.inner_strict);
  if (tc.distance_bound && tc.inner_bound && strict_ok) return {};
  return {false, fmt::format("{} x={} v={} step={:.3e} bounds=({}, {}) strict=({}, {})", set->spec(), format_point(x),
                             format_point(v), tc.step, tc.distance_bound, tc.inner_bound, tc.distance_strict,
                             tc.inner_strict)};
}

TrialOutcome prox_equals_regular(InstanceGenerator& gen) {
  const SetPtr set = random_set(gen, true);
  const Point x = gen.feasible(*set);
  const Point v = set->project_regular_normal(x, gen.ambient(set->ambient_shape()));
  const auto alphas = default_witness_alphas();
  if (in_proximal_normal_witness(*set, x, v, alphas)) return {};
  return {false, fmt::format("{} x={} v={}: no proximal witness", set->spec(), format_point(x), format_point(v))};
}

SolverConfig random_config(InstanceGenerator& gen) {
  SolverConfig cfg;
  switch (gen.index(6)) {
    case 0: cfg.rule = MaxRule{0}; break;
    case 1: cfg.rule = MaxRule{2}; break;
    case 2: cfg.rule = MaxRule{5}; break;
    case 3: cfg.rule = AverageRule{0.1}; break;
    case 4: cfg.rule = AverageRule{0.5}; break;
    default: cfg.rule = AverageRule{1.0}; break;
  }
  const double steps[] = {1.0, 0.7, 0.4};
  cfg.alpha_max = steps[gen.index(3)];
  cfg.max_iters = 500;
  return cfg;
}

struct RandomRun {
  SetPtr set;
  Objective obj;
  SolverConfig cfg;
  Trace trace;
};

RandomRun random_run(InstanceGenerator& gen) {
  SetPtr set = random_set(gen, true);
  Objective obj = least_squares(gen.ambient(set->ambient_shape(), 2.0));
  SolverConfig cfg = random_config(gen);
  const Point x0 = gen.feasible(*set);
  Trace trace = pgd(*set, obj, x0, cfg);
  return {std::move(set), std::move(obj), cfg, std::move(trace)};
}

TrialOutcome armijo_postcondition(InstanceGenerator& gen) {
  const RandomRun run = random_run(gen);
  const StepAudit a = audit_pgd_trace(*run.set, run.obj, run.trace, run.cfg);
  if (a.ok()) return {};
  return {false, fmt::format("{}: {} steps, armijo {}, sufficient decrease {}, translation {}, infeasible {}",
                             run.set->spec(), a.steps, a.armijo_violations, a.sufficient_decrease_violations,
                             a.translation_violations, a.infeasible_iterates)};
}

TrialOutcome nonmonotone(InstanceGenerator& gen) {
  const RandomRun run = random_run(gen);
  const RuleAudit a = audit_nonmonotone_rule(run.trace, run.cfg);
  if (a.ok()) return {};
  return {false, fmt::format("{}: window-max {}, mu nonincreasing {}, mu >= f {}, sublevel {}", run.set->spec(),
                             a.window_max_nonincreasing, a.mu_nonincreasing, a.mu_dominates_f,
                             a.in_initial_sublevel_set)};
}

TrialOutcome idempotence(InstanceGenerator& gen) {
  const SetPtr set = random_set(gen, false);
  const Point z = gen.ambient(set->ambient_shape(), 2.0);
  const Point p = set->project(z);
  const double gap = distance(set->project(p), p);
  if (gap <= 1e-9 * (1.0 + norm(p)) && set->contains(p)) return {};
  return {false, fmt::format("{} z={}: ||P(P(z)) - P(z)|| = {:.3e}", set->spec(), format_point(z), gap)};
}

TrialOutcome nested_cones(InstanceGenerator& gen) {
  const SetPtr set = random_set(gen, false);
  const Point x = gen.feasible(*set);
  // Half of the trials use a regular normal so the implications are exercised.
  Point v = gen.ambient(set->ambient_shape());
  if (gen.uniform(0, 1) < 0.5) v = set->project_regular_normal(x, v);
  const Point target = x + v;  // -grad f(x) = v
  const StationarityReport r = classify_stationarity(*set, least_squares(target), x);
  const bool ok = (!r.proximal_witness || r.d_regular <= kClassifyTol) && (r.d_regular > kClassifyTol || r.general_member) &&
                  (r.classification != Stationarity::Proximal || r.d_regular <= kClassifyTol);
  if (ok) return {};
  return {false, fmt::format("{} x={} v={}: witness {}, d_regular {:.3e}, general {}", set->spec(), format_point(x),
                             format_point(v), static_cast<bool>(r.proximal_witness), r.d_regular, r.general_member)};
}

const std::map<std::string, Trial>& registry() {
  static const std::map<std::string, Trial> r{
      {"projected-translation", projected_translation},
      {"prox-equals-regular", prox_equals_regular},
      {"armijo-postcondition", armijo_postcondition},
      {"nonmonotone", nonmonotone},
      {"idempotence", idempotence},
      {"nested-cones", nested_cones},
  };
  return r;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  // splitmix64 finalizer over the pair.
  std::uint64_t z = seed * 0x9e3779b97f4a7c15ULL + trial + 1;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SuiteReport run_suite(const std::string& suite, std::uint64_t seed, std::size_t trials, unsigned jobs) {
  const auto it = registry().find(suite);
  if (it == registry().end()) throw std::invalid_argument(fmt::format("unknown suite '{}'", suite));
  const Trial& trial = it->second;

  std::vector<TrialOutcome> outcomes(trials);
  auto work = [&](std::size_t i) {
    InstanceGenerator gen(trial_seed(seed, i));
    try {
      outcomes[i] = trial(gen);
    } catch (const std::exception& e) {
      outcomes[i] = {false, std::string("exception: ") + e.what()};
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < trials; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < trials;) work(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  SuiteReport rep{suite, seed, trials};
  for (std::size_t i = 0; i < trials; ++i) {
    if (outcomes[i].ok) continue;
    if (rep.failed++ == 0) {
      rep.first_failure = i;
      rep.counterexample = outcomes[i].detail;
    }
  }
  return rep;
}

}  // namespace ncpgd::cli
