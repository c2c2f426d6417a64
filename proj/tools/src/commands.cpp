#include "ncpgd_cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "ncpgd/analysis.hpp"
#include "ncpgd/errors.hpp"
#include "ncpgd/trace_io.hpp"
#include "ncpgd_cli/suites.hpp"

namespace ncpgd::cli {

namespace {

std::shared_ptr<spdlog::logger> logger() {
  static const auto log = [] {
    auto l = spdlog::stderr_color_mt("ncpgd");
    l->set_pattern("[%l] %v");
    const char* env = std::getenv("NCPGD_LOG");
    const std::string level = env ? env : "";
    if (level == "quiet") {
      l->set_level(spdlog::level::off);
    } else if (level == "debug") {
      l->set_level(spdlog::level::debug);
    } else if (level == "info") {
      l->set_level(spdlog::level::info);
    } else {
      l->set_level(spdlog::level::warn);
    }
    return l;
  }();
  return log;
}

struct Instance {
  SetPtr set;
  Objective obj;
  Point x0;
};

Instance build(const ExperimentSpec& spec) {
  InstanceGenerator gen(spec.seed);
  SetPtr set = parse_set_spec(spec.set);
  Objective obj = parse_objective(spec.objective, set->ambient_shape(), gen);
  Point x0 = parse_point(spec.x0, *set, gen);
  spec.cfg.validate();
  if (!set->contains(x0)) {
    throw InfeasiblePointError(fmt::format("x0 = {} is not in {}", format_point(x0), set->spec()));
  }
  logger()->info("set {}, objective {}, x0 {}, seed {}", set->spec(), obj.name(), format_point(x0), spec.seed);
  return {std::move(set), std::move(obj), std::move(x0)};
}

Trace run_algorithm(const std::string& algorithm, const Instance& in, const SolverConfig& cfg) {
  Trace t = algorithm == "p2gd" ? p2gd(*in.set, in.obj, in.x0, cfg) : pgd(*in.set, in.obj, in.x0, cfg);
  for (std::size_t i = 0; i < t.size(); ++i) {
    logger()->debug("{} iter {} f {:.17g} alpha {} backtracks {} measure {:.3e}", algorithm, i, t.f_values[i],
                    t.alphas[i], t.backtrack_counts[i], t.stat_measures[i]);
  }
  logger()->info("{} finished after {} iterates: {}", algorithm, t.size(), to_string(t.termination));
  return t;
}

// Writes to the named file, or to `fallback` when the name is empty.
template <class Fn>
void write_to(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("out", fmt::format("cannot write '{}'", path));
  fn(f);
}

std::string summary_line(const std::string& algorithm, const Instance& in, const Trace& t) {
  const StationarityReport r = classify_stationarity(*in.set, in.obj, t.last());
  return fmt::format("algorithm={} termination={} iterates={} f={:.12g} x={} d_regular={:.3e} classification={}",
                     algorithm, to_string(t.termination), t.size(), r.f_value, format_point(t.last()), r.d_regular,
                     to_string(r.classification));
}

std::string apocalypse_line(const std::string& algorithm, const Instance& in, const Trace& t) {
  const ApocalypseFlag flag = detect_apocalypse(*in.set, in.obj, t, kClassifyTol);
  std::string line = fmt::format("apocalypse {}: flagged={} converged={} limit={} measure_at_limit={:.6g}", algorithm,
                                 flag.flagged, flag.converged, format_point(flag.limit_point), flag.measure_at_limit);
  if (flag.converged) {
    line += " classification=" + to_string(classify_stationarity(*in.set, in.obj, flag.limit_point).classification);
  }
  if (!flag.note.empty()) line += " note=\"" + flag.note + "\"";
  return line;
}

// Line-search target x - alpha0 grad f(x) of each iterate.
std::vector<Point> targets(const Instance& in, const Trace& t, double alpha0) {
  std::vector<Point> out;
  out.reserve(t.size());
  for (const Point& x : t.iterates) out.push_back(x - alpha0 * in.obj.grad(x));
  return out;
}

int exit_for(const Trace& t) { return t.termination == Termination::BacktrackFailure ? kExitSolverFailure : kExitOk; }

}  // namespace

int cmd_solve(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  const Instance in = build(spec);
  const std::string algorithm = spec.algorithm == "p2gd" ? "p2gd" : "pgd";
  const Trace t = run_algorithm(algorithm, in, spec.cfg);
  write_to(spec.out, out, [&](std::ostream& os) { write_trace_csv(os, t); });
  (spec.out.empty() ? err : out) << summary_line(algorithm, in, t) << '\n';
  return exit_for(t);
}

int cmd_compare(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  const Instance in = build(spec);
  const double alpha0 = spec.cfg.initial_alpha();
  const std::vector<std::pair<std::string, Trace>> runs{{"pgd", run_algorithm("pgd", in, spec.cfg)},
                                                        {"p2gd", run_algorithm("p2gd", in, spec.cfg)}};
  const std::size_t dim = in.x0.size();

  write_to(spec.out, out, [&](std::ostream& os) {
    std::string header = "algorithm," + trace_csv_header(dim);
    for (std::size_t j = 0; j < dim; ++j) header += fmt::format(",target_{}", j);
    os << header << '\n';
    for (const auto& [name, t] : runs) {
      std::istringstream rows(trace_to_csv(t));
      std::string row;
      std::getline(rows, row);  // header
      const auto tg = targets(in, t, alpha0);
      for (std::size_t i = 0; std::getline(rows, row); ++i) {
        os << name << ',' << row;
        for (const double c : tg[i].vec()) os << fmt::format(",{:.17g}", c);
        os << '\n';
      }
    }
  });

  if (!spec.plot_data.empty()) {
    // One panel per algorithm: iterates and the arrows x_i -> x_i - alpha0 grad f(x_i).
    write_to(spec.plot_data, out, [&](std::ostream& os) {
      std::string header = "panel,iter";
      for (std::size_t j = 0; j < dim; ++j) header += fmt::format(",from_{}", j);
      for (std::size_t j = 0; j < dim; ++j) header += fmt::format(",to_{}", j);
      os << header << '\n';
      for (const auto& [name, t] : runs) {
        const auto tg = targets(in, t, alpha0);
        for (std::size_t i = 0; i < t.size(); ++i) {
          os << name << ',' << i;
          for (const double c : t.iterates[i].vec()) os << fmt::format(",{:.17g}", c);
          for (const double c : tg[i].vec()) os << fmt::format(",{:.17g}", c);
          os << '\n';
        }
      }
    });
  }

  std::ostream& report = spec.out.empty() ? err : out;
  int code = kExitOk;
  for (const auto& [name, t] : runs) {
    report << summary_line(name, in, t) << '\n' << apocalypse_line(name, in, t) << '\n';
    code = std::max(code, exit_for(t));
  }
  return code;
}

int cmd_cones(const std::string& set_spec, const std::string& x_text, const std::string& v_text, double tol,
              std::ostream& out) {
  const SetPtr set = parse_set_spec(set_spec);
  const Point x = parse_coordinates(x_text, set->ambient_shape(), "x");
  const Point v = parse_coordinates(v_text, set->ambient_shape(), "v");
  if (!set->contains(x)) throw InfeasiblePointError(fmt::format("x = {} is not in {}", format_point(x), set->spec()));

  const auto alphas = default_witness_alphas();
  const ProximalWitness w = in_proximal_normal_witness(*set, x, v, alphas, tol);
  out << fmt::format("set: {}\n", set->spec());
  out << fmt::format("x: {}\nstratum: {}\n", format_point(x), set->stratum_id(x));
  out << fmt::format("v: {}\n", format_point(v));
  out << fmt::format("d_regular: {:.12g}\n", set->dist_regular_normal(x, v));
  out << fmt::format("d_proximal: {:.12g}\n", set->dist_proximal_normal(x, v));
  out << fmt::format("proximal_member: {}\n", set->in_proximal_normal(x, v, tol));
  out << fmt::format("proximal_witness: {}{}\n", w.found, w.found ? fmt::format(" (alpha = {})", w.alpha) : "");
  out << fmt::format("d_general: {:.12g}\n", set->dist_general_normal(x, v));
  out << fmt::format("general_member: {}\n", set->in_general_normal(x, v, tol));
  try {
    out << fmt::format("tangent_projection: {}\n", format_point(set->project_tangent(x, v)));
  } catch (const UnsupportedOperation&) {
    out << "tangent_projection: unsupported\n";
  }
  return kExitOk;
}

int cmd_check(const std::string& suite, std::uint64_t seed, std::size_t trials, unsigned jobs, std::ostream& out) {
  const SuiteReport rep = run_suite(suite, seed, trials, jobs);
  out << fmt::format("suite={} seed={} trials={} passed={} failed={}\n", rep.suite, rep.seed, rep.trials,
                     rep.trials - rep.failed, rep.failed);
  if (!rep.ok()) {
    out << fmt::format("counterexample: trial {} (trial seed {}): {}\n", rep.first_failure,
                       trial_seed(seed, rep.first_failure), rep.counterexample);
    return kExitSuiteFailure;
  }
  return kExitOk;
}

namespace {

// Options shared by solve and compare. Values land in `given` and are
// applied over the config file in declaration order.
struct ExperimentOptions {
  std::string config;
  std::vector<std::pair<std::string, CLI::Option*>> options;
  std::map<std::string, std::string> values;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "flat key=value config file");
    const std::vector<std::pair<std::string, std::string>> flags{
        {"set", "feasible set, e.g. sparse:n=10,s=3"},
        {"objective", "lsq:c1,c2,... | lsq:random | const:V | quartic | cubic | cusp"},
        {"x0", "comma-separated start point, zero or random"},
        {"alpha", "constant step: alpha_min = alpha_max = initial step"},
        {"alpha-min", "lower bound on the initial step"},
        {"alpha-max", "upper bound on the initial step"},
        {"step", "alpha-max | fixed:A"},
        {"beta", "backtracking factor in (0, 1)"},
        {"c", "Armijo constant in (0, 1)"},
        {"rule", "max:l=K | avg:p=P"},
        {"stat-tol", "stopping tolerance on the stationarity measure"},
        {"max-iters", "iteration cap"},
        {"max-backtracks", "backtracking cap per step"},
        {"stationarity", "regular | proximal"},
        {"seed", "seed for random targets and start points"},
        {"out", "trace CSV path (default stdout)"},
        {"emit-plot-data", "figure data CSV path (compare)"},
    };
    for (const auto& [name, help] : flags) options.emplace_back(name, app->add_option("--" + name, values[name], help));
  }

  ExperimentSpec resolve(const std::string& algorithm) const {
    ExperimentSpec spec;
    spec.algorithm = algorithm;
    if (!config.empty()) apply_config_file(spec, config);
    for (const auto& [name, opt] : options) {
      if (opt->count() > 0) apply_setting(spec, name, values.at(name));
    }
    if (algorithm == "both") spec.algorithm = "both";
    return spec;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projected gradient descent on nonconvex sets with stationarity certificates", "ncpgd"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "run PGD (or P2GD with --algorithm p2gd) and write the trace");
  ExperimentOptions solve_opts;
  solve_opts.attach(solve);
  std::string solve_algorithm = "pgd";
  solve->add_option("--algorithm", solve_algorithm, "pgd | p2gd")->check(CLI::IsMember({"pgd", "p2gd"}));

  auto* compare = app.add_subcommand("compare", "run PGD and P2GD from the same start and report apocalypses");
  ExperimentOptions compare_opts;
  compare_opts.attach(compare);

  auto* cones = app.add_subcommand("cones", "tangent and normal cone report for v at x");
  std::string cone_set, cone_x, cone_v;
  double cone_tol = kMembershipTol;
  cones->add_option("--set", cone_set, "feasible set")->required();
  cones->add_option("--x", cone_x, "base point (comma-separated)")->required();
  cones->add_option("--v", cone_v, "direction (comma-separated)")->required();
  cones->add_option("--tol", cone_tol, "membership tolerance");

  auto* check = app.add_subcommand("check", "run a randomized property suite");
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  unsigned jobs = 1;
  check->add_option("--suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  check->add_option("--seed", seed, "base seed");
  check->add_option("--trials", trials, "number of trials");
  check->add_option("--jobs", jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) {
      ExperimentSpec spec = solve_opts.resolve(solve_algorithm);
      if (solve->count("--algorithm") > 0) spec.algorithm = solve_algorithm;
      return cmd_solve(spec, out, err);
    }
    if (compare->parsed()) return cmd_compare(compare_opts.resolve("both"), out, err);
    if (cones->parsed()) return cmd_cones(cone_set, cone_x, cone_v, cone_tol, out);
    if (check->parsed()) return cmd_check(suite, seed, trials, jobs, out);
  } catch (const InfeasiblePointError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const BacktrackFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const DecompositionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const std::exception& e) {
    // ParseError, UnsupportedOperation, invalid configuration.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ncpgd::cli
