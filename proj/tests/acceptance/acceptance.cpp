// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. All tolerances are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "ncpgd/analysis.hpp"
#include "ncpgd/instances.hpp"
#include "ncpgd/objective.hpp"
#include "ncpgd/sets.hpp"
#include "ncpgd/solver.hpp"
#include "../support/oracles.hpp"

using namespace ncpgd;

namespace {

constexpr double kCoordTol = 1e-12;         // criterion 1
constexpr double kSeqMeasureTol = 1e-8;     // criterion 2: measure along the P2GD run
constexpr double kLimitMeasureTol = 1e-9;   // criterion 2: d_regular at the limit vs |a|
constexpr double kStrictStep = 1e-9;        // criterion 3
constexpr double kOracleTol = 1e-10;        // criterion 4
constexpr double kWitnessTol = 1e-9;        // criterion 5
constexpr double kFinalMeasureTol = 1e-7;   // criterion 7
constexpr double kConeTableTol = 1e-9;      // criterion 8
constexpr double kGradTol = 1e-5;           // criterion 9

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

SolverConfig fixed_step(double alpha, double c) {
  SolverConfig cfg;
  cfg.alpha_min = alpha;
  cfg.alpha_max = alpha;
  cfg.initial_step = FixedStep{alpha};
  cfg.c = c;
  return cfg;
}

double max_coord_error(const Trace& t, const std::function<Eigen::Vector2d(std::size_t)>& expected) {
  double err = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) err = std::max(err, (t.iterates[i].vec() - expected(i)).cwiseAbs().maxCoeff());
  return err;
}

// Criterion 1: closed-form iterates on the 1-sparse plane.
Outcome closed_form_reproduction() {
  const auto t0 = Clock::now();
  const SparseSet set(2, 1);
  const Objective f = least_squares(Point::of({1, 0}));
  const Point x0 = Point::of({0, 1});
  Outcome o;

  const SolverConfig unit = fixed_step(1.0, 0.4);
  const Trace pgd1 = pgd(set, f, x0, unit);
  const Trace p2gd1 = p2gd(set, f, x0, unit);
  const std::vector<Eigen::Vector2d> pgd_expect{{0, 1}, {1, 0}};
  const std::vector<Eigen::Vector2d> p2gd_expect{{0, 1}, {0, 0}, {1, 0}};
  const bool unit_ok = pgd1.size() == 2 && p2gd1.size() == 3 &&
                       max_coord_error(pgd1, [&](auto i) { return pgd_expect[i]; }) <= kCoordTol &&
                       max_coord_error(p2gd1, [&](auto i) { return p2gd_expect[i]; }) <= kCoordTol;

  const SolverConfig small = fixed_step(0.45, 0.05);
  const Trace pgd2 = pgd(set, f, x0, small);
  const Trace p2gd2 = p2gd(set, f, x0, small);
  const std::size_t istar = oracle::axis_switch_index(1, 1, 0.45);
  std::size_t switch_at = 0;
  while (switch_at + 1 < pgd2.size() && pgd2.iterates[switch_at + 1][0] == 0.0) ++switch_at;
  const double pgd_err = max_coord_error(pgd2, [](auto i) { return oracle::pgd_iterate(1, 1, 0.45, i); });
  const double p2gd_err = max_coord_error(p2gd2, [](auto i) { return oracle::p2gd_iterate(1, 0.45, i); });
  const bool small_ok = istar == 1 && switch_at == istar && pgd_err <= kCoordTol && p2gd_err <= kCoordTol &&
                        pgd2.size() > istar + 2 && p2gd2.size() > 10;

  const double elapsed = seconds_since(t0);
  o.pass = unit_ok && small_ok && elapsed < 1.0;
  o.detail = fmt::format("alpha=1 {}; alpha=0.45: i*={} observed switch {}, PGD err {:.1e} ({} iterates), P2GD err {:.1e} ({} iterates); {:.3f}s",
                         unit_ok ? "exact" : "MISMATCH", istar, switch_at, pgd_err, pgd2.size(), p2gd_err,
                         p2gd2.size(), elapsed);
  return o;
}

// Criterion 2: the P2GD run is an apocalypse, the PGD run is not.
Outcome apocalypse_detection() {
  const SparseSet set(2, 1);
  const Objective f = least_squares(Point::of({1, 0}));
  const Point x0 = Point::of({0, 1});
  const SolverConfig cfg = fixed_step(0.45, 0.05);

  const Trace p2 = p2gd(set, f, x0, cfg);
  const auto series = stationarity_measure_series(set, f, p2);
  const ApocalypseFlag p2flag = detect_apocalypse(set, f, p2, kClassifyTol);
  const StationarityReport p2rep = classify_stationarity(set, f, p2flag.limit_point);

  const Trace pg = pgd(set, f, x0, cfg);
  const ApocalypseFlag pgflag = detect_apocalypse(set, f, pg, kClassifyTol);
  const StationarityReport pgrep = classify_stationarity(set, f, Point::of({1, 0}));
  const StationarityReport pglim = classify_stationarity(set, f, pgflag.limit_point);

  Outcome o;
  o.pass = series.back() < kSeqMeasureTol && std::abs(p2rep.d_regular - 1.0) <= kLimitMeasureTol && p2flag.flagged &&
           p2rep.classification == Stationarity::MordukhovichOnly && !pgflag.flagged && pgflag.converged &&
           pgrep.classification == Stationarity::Proximal && pglim.classification == Stationarity::Proximal;
  o.detail = fmt::format("P2GD final measure {:.2e}, limit ({:.1e}, {:.1e}) d_regular {:.12f} [{}], flagged {}; "
                         "PGD flagged {}, limit {} ",
                         series.back(), p2flag.limit_point[0], p2flag.limit_point[1], p2rep.d_regular,
                         to_string(p2rep.classification), p2flag.flagged, pgflag.flagged,
                         to_string(pglim.classification));
  return o;
}

std::vector<SetPtr> all_sets() {
  return {std::make_shared<SparseSet>(6, 3),      std::make_shared<NonnegSparseSet>(6, 2),
          std::make_shared<LowRankSet>(4, 4, 2),  std::make_shared<PsdLowRankSet>(4, 2),
          std::make_shared<CurveSet>(),           std::make_shared<EpigraphSet>()};
}

// Criterion 3: projected-translation inequalities on random trials.
Outcome projected_translation() {
  const auto t0 = Clock::now();
  InstanceGenerator gen(3);
  const auto sets = all_sets();
  std::size_t failures = 0, strict_checked = 0, strict_failures = 0;
  std::string first;
  constexpr std::size_t kTrials = 10000;
  for (std::size_t k = 0; k < kTrials; ++k) {
    const FeasibleSet& set = *sets[k % sets.size()];
    const Point x = gen.feasible(set);
    const Point v = gen.ambient(set.ambient_shape(), std::pow(10.0, gen.uniform(-3, 1)));
    const TranslationCheck tc = projected_translation_check(set, x, v);
    if (!tc.distance_bound || !tc.inner_bound) {
      ++failures;
      if (first.empty()) first = fmt::format(" first failure on {}", set.spec());
    }
    if (tc.step > kStrictStep) {
      ++strict_checked;
      if (!tc.distance_strict || !tc.inner_strict) ++strict_failures;
    }
  }
  const double elapsed = seconds_since(t0);
  return {failures == 0 && strict_failures == 0 && elapsed < 30.0,
          fmt::format("{} trials, {} failures, strict checked {} / failed {}; {:.2f}s{}", kTrials, failures,
                      strict_checked, strict_failures, elapsed, first)};
}

// Criterion 4: projections against exhaustive enumeration and dense oracles.
Outcome brute_force_projection() {
  InstanceGenerator gen(4);
  std::size_t cases = 0, failures = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    ++failures;
    if (first.empty()) first = " first failure: " + what;
  };

  for (std::size_t n = 2; n <= 6; ++n) {
    for (std::size_t s = 1; s < n; ++s) {
      const SparseSet sparse(n, s);
      const NonnegSparseSet nonneg(n, s);
      for (int k = 0; k < 1000; ++k) {
        // Every fourth input has small-integer entries so that ties occur.
        Point z = gen.ambient(Shape::vector(n), 2.0);
        if (k % 4 == 0) {
          Eigen::VectorXd d = z.vec().array().round();
          z = Point(z.shape(), d);
        }
        for (const bool nn : {false, true}) {
          const Point p = nn ? nonneg.project(z) : sparse.project(z);
          const auto m = oracle::sparse_minimizers(z.vec(), s, nn);
          const bool listed = std::any_of(m.points.begin(), m.points.end(),
                                          [&](auto& y) { return (y - p.vec()).norm() <= 1e-12; });
          ++cases;
          if (!listed) fail(fmt::format("{} n={} s={}", nn ? "nonneg-sparse" : "sparse", n, s));
        }
      }
    }
  }
  for (std::size_t m = 2; m <= 4; ++m) {
    for (std::size_t n = 2; n <= 4; ++n) {
      for (std::size_t r = 1; r < std::min(m, n); ++r) {
        const LowRankSet set(m, n, r);
        for (int k = 0; k < 200; ++k) {
          const Point z = gen.ambient(Shape::matrix(m, n));
          const double err = (set.project(z).matrix() - oracle::lowrank_truncation(z.matrix(), r)).cwiseAbs().maxCoeff();
          ++cases;
          if (err > kOracleTol) fail(fmt::format("lowrank {}x{} r={} err {:.1e}", m, n, r, err));
        }
      }
    }
  }
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t r = 1; r < n; ++r) {
      const PsdLowRankSet set(n, r);
      for (int k = 0; k < 500; ++k) {
        const Point z = gen.ambient(Shape::matrix(n, n));
        const double err = (set.project(z).matrix() - oracle::psd_truncation(z.matrix(), r)).cwiseAbs().maxCoeff();
        ++cases;
        if (err > kOracleTol) fail(fmt::format("psd n={} r={} err {:.1e}", n, r, err));
      }
    }
  }
  return {failures == 0, fmt::format("{} comparisons, {} mismatches{}", cases, failures, first)};
}

std::vector<SetPtr> structured_sets() {
  return {std::make_shared<SparseSet>(5, 3), std::make_shared<NonnegSparseSet>(5, 3),
          std::make_shared<LowRankSet>(4, 3, 2), std::make_shared<PsdLowRankSet>(4, 2)};
}

// Criterion 5: every regular normal of the structured sets has a proximal
// witness.
Outcome proximal_equals_regular() {
  InstanceGenerator gen(5);
  const auto alphas = default_witness_alphas();
  std::size_t trials = 0, failures = 0;
  std::string first;
  for (const auto& set : structured_sets()) {
    for (int stratum = 0; stratum <= set->top_stratum(); ++stratum) {
      for (int p = 0; p < 100; ++p) {
        const Point x = gen.feasible(*set, stratum);
        for (int d = 0; d < 20; ++d) {
          const Point v = set->project_regular_normal(x, gen.ambient(set->ambient_shape()));
          ++trials;
          if (!in_proximal_normal_witness(*set, x, v, alphas, kWitnessTol)) {
            ++failures;
            if (first.empty()) first = fmt::format(" first failure on {} stratum {}", set->spec(), stratum);
          }
        }
      }
    }
  }
  return {failures == 0, fmt::format("{} directions, {} without witness{}", trials, failures, first)};
}

struct RunRecord {
  Trace trace;
  SolverConfig cfg;
  SetPtr set;
  Objective obj;
};

// The 200 random runs shared by criteria 6 and 7.
const std::vector<RunRecord>& random_runs() {
  static const std::vector<RunRecord> runs = [] {
    std::vector<RunRecord> out;
    InstanceGenerator gen(6);
    const auto sets = structured_sets();
    const std::vector<NonmonotoneRule> rules{MaxRule{0}, MaxRule{2}, MaxRule{5},
                                             AverageRule{0.1}, AverageRule{0.5}, AverageRule{1.0}};
    const double steps[] = {1.0, 0.7, 0.4};
    for (std::size_t k = 0; k < 200; ++k) {
      const SetPtr set = sets[k % sets.size()];
      SolverConfig cfg;
      cfg.rule = rules[k % rules.size()];
      cfg.alpha_max = steps[gen.index(3)];
      cfg.alpha_min = std::min(cfg.alpha_min, cfg.alpha_max);
      cfg.max_iters = 2000;
      const Objective obj = least_squares(gen.ambient(set->ambient_shape(), 2.0));
      const Point x0 = gen.feasible(*set);
      out.push_back({pgd(*set, obj, x0, cfg), cfg, set, obj});
    }
    return out;
  }();
  return runs;
}

// Criterion 6: nonmonotone rule properties and line-search postconditions.
Outcome nonmonotone_properties() {
  std::size_t rule_failures = 0, step_failures = 0, steps = 0;
  for (const auto& run : random_runs()) {
    const RuleAudit ra = audit_nonmonotone_rule(run.trace, run.cfg);
    const StepAudit sa = audit_pgd_trace(*run.set, run.obj, run.trace, run.cfg);
    steps += sa.steps;
    if (!ra.ok()) ++rule_failures;
    if (!sa.ok()) ++step_failures;
  }
  return {rule_failures == 0 && step_failures == 0,
          fmt::format("{} runs, {} steps, rule violations in {} runs, step violations in {} runs", random_runs().size(),
                      steps, rule_failures, step_failures)};
}

// Criterion 7: converged runs end at certified proximal-stationary points.
Outcome measure_convergence() {
  std::size_t converged = 0, failures = 0;
  for (const auto& run : random_runs()) {
    if (run.trace.termination != Termination::StationaryAtTol) continue;
    ++converged;
    const Point& x = run.trace.last();
    const double d = run.set->dist_regular_normal(x, -run.obj.grad(x));
    if (!run.trace.proximal_witness.back() || d > kFinalMeasureTol) ++failures;
  }
  return {failures == 0 && converged > 0,
          fmt::format("{} of {} runs converged, {} without final certificate", converged, random_runs().size(), failures)};
}

// Criterion 8: cone table at the cusp of the curve.
Outcome cusp_cone_table() {
  const CurveSet curve;
  const Point origin = Point::zeros(Shape::vector(2));
  std::size_t errors[4] = {0, 0, 0, 0};
  std::size_t members[4] = {0, 0, 0, 0};
  for (int j = 0; j < 360; ++j) {
    const double th = 2.0 * std::numbers::pi * j / 360.0;
    // Exact axis directions at multiples of 90 degrees.
    const double c = j % 90 == 0 ? std::round(std::cos(th)) : std::cos(th);
    const double s = j % 90 == 0 ? std::round(std::sin(th)) : std::sin(th);
    const Point v = Point::of({c, s});
    const Eigen::Vector2d w(c, s);

    const bool tan = distance(curve.project_tangent(origin, v), v) <= kConeTableTol;
    const bool reg = curve.dist_regular_normal(origin, v) <= kConeTableTol;
    const bool prox = curve.in_proximal_normal(origin, v, kConeTableTol);
    const bool gen = curve.in_general_normal(origin, v, kConeTableTol);
    const bool expect[4] = {oracle::cusp_tangent_distance(w) <= kConeTableTol,
                            oracle::cusp_regular_member(w, kConeTableTol),
                            oracle::cusp_proximal_member(w, kConeTableTol),
                            oracle::cusp_general_member(w, kConeTableTol)};
    const bool got[4] = {tan, reg, prox, gen};
    for (int q = 0; q < 4; ++q) {
      errors[q] += got[q] != expect[q];
      members[q] += expect[q];
    }
  }
  const bool ok = errors[0] + errors[1] + errors[2] + errors[3] == 0;
  return {ok, fmt::format("360 directions; misclassified T {} / regular {} / proximal {} / general {} "
                          "(members {} / {} / {} / {})",
                          errors[0], errors[1], errors[2], errors[3], members[0], members[1], members[2], members[3])};
}

// Criterion 9: gradients of every shipped objective.
Outcome gradient_validation() {
  InstanceGenerator gen(9);
  struct Case {
    Objective obj;
    Shape shape;
  };
  const std::vector<Case> cases{
      {least_squares(Point::of({1, -2, 0.5})), Shape::vector(3)},
      {least_squares(Point::from_matrix(Eigen::MatrixXd::Identity(3, 3))), Shape::matrix(3, 3)},
      {constant_objective(2.5), Shape::vector(4)},
      {quartic_norm(), Shape::vector(4)},
      {cubic_sum(), Shape::vector(3)},
      {cusp_example_objective(), Shape::vector(2)},
  };
  double worst = 0.0;
  std::string worst_name;
  for (const auto& c : cases) {
    for (int k = 0; k < 100; ++k) {
      const double err = check_gradient(c.obj, gen.ambient(c.shape));
      if (err > worst) worst = err, worst_name = c.obj.name();
    }
  }
  return {worst < kGradTol, fmt::format("{} objectives x 100 points, worst error {:.2e}{}", cases.size(), worst,
                                        worst_name.empty() ? "" : " (" + worst_name + ")")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"closed-form PGD / P2GD iterates on the 1-sparse plane", closed_form_reproduction},
      {"apocalypse detection", apocalypse_detection},
      {"projected-translation inequalities", projected_translation},
      {"projections vs brute-force and dense oracles", brute_force_projection},
      {"regular normals admit proximal witnesses", proximal_equals_regular},
      {"nonmonotone rule and line-search properties", nonmonotone_properties},
      {"stationarity measure at converged runs", measure_convergence},
      {"cusp cone table", cusp_cone_table},
      {"gradient validation", gradient_validation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] criterion %zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
