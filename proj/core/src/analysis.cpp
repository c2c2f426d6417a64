#include "ncpgd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "ncpgd/errors.hpp"

namespace ncpgd {

std::string to_string(Stationarity s) {
  switch (s) {
    case Stationarity::Proximal:
      return "P-stationary";
    case Stationarity::Bouligand:
      return "B-stationary";
    case Stationarity::MordukhovichOnly:
      return "M-stationary-only";
    case Stationarity::NonStationary:
      return "non-stationary";
  }
  return "unknown";
}

StationarityReport classify_stationarity(const FeasibleSet& set, const Objective& obj, const Point& x, double tol) {
  if (!set.contains(x)) throw InfeasiblePointError(set.spec() + ": cannot classify a point outside the set");
  const Point v = -obj.grad(x);

  StationarityReport r{.point = x};
  r.f_value = obj.eval(x);
  r.d_regular = set.dist_regular_normal(x, v);
  r.d_general = std::min(set.dist_general_normal(x, v), r.d_regular);
  r.general_member = r.d_general <= tol;
  if (r.d_regular <= tol) {
    r.proximal_member = set.in_proximal_normal(x, v, tol);
    const auto alphas = default_witness_alphas();
    r.proximal_witness = in_proximal_normal_witness(set, x, v, alphas, tol);
  }

  if (r.d_regular <= tol && r.proximal_member) {
    r.classification = Stationarity::Proximal;
  } else if (r.d_regular <= tol) {
    r.classification = Stationarity::Bouligand;
  } else if (r.general_member) {
    r.classification = Stationarity::MordukhovichOnly;
  } else {
    r.classification = Stationarity::NonStationary;
  }
  return r;
}

std::vector<double> stationarity_measure_series(const FeasibleSet& set, const Objective& obj, const Trace& trace,
                                                MeasureKind kind) {
  std::vector<double> out;
  out.reserve(trace.size());
  for (const Point& x : trace.iterates) {
    const Point v = -obj.grad(x);
    out.push_back(kind == MeasureKind::Regular ? set.dist_regular_normal(x, v) : set.dist_proximal_normal(x, v));
  }
  return out;
}

ApocalypseFlag detect_apocalypse(const FeasibleSet& set, const Objective& obj, const Trace& trace, double tol) {
  if (trace.empty()) throw std::invalid_argument("detect_apocalypse: empty trace");
  if (!(tol > 0)) throw std::invalid_argument("detect_apocalypse: tol must be positive");

  constexpr std::size_t kTail = 5;
  const std::size_t first = trace.size() > kTail ? trace.size() - kTail : 0;
  double diameter = 0.0;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(trace.last().size()));
  for (std::size_t i = first; i < trace.size(); ++i) {
    mean += trace.iterates[i].vec();
    for (std::size_t j = i + 1; j < trace.size(); ++j) {
      diameter = std::max(diameter, distance(trace.iterates[i], trace.iterates[j]));
    }
  }
  mean /= static_cast<double>(trace.size() - first);

  ApocalypseFlag flag{.limit_point = set.snap_to_stratum(Point(trace.last().shape(), mean), tol)};
  flag.measure_along_sequence = stationarity_measure_series(set, obj, trace, MeasureKind::Regular);
  flag.converged = diameter < tol;
  if (!flag.converged) {
    flag.note = fmt::format("trace tail has not converged (diameter {:.3e} >= tol {:.3e})", diameter, tol);
    flag.measure_at_limit = flag.measure_along_sequence.back();
    return flag;
  }
  flag.measure_at_limit = set.dist_regular_normal(flag.limit_point, -obj.grad(flag.limit_point));
  flag.flagged = flag.measure_along_sequence.back() <= tol && flag.measure_at_limit > 10.0 * tol;
  if (flag.flagged) {
    flag.note = fmt::format("measure vanishes along the sequence but equals {:.6g} at the limit", flag.measure_at_limit);
  }
  return flag;
}

double lipschitz_probe(const Objective& obj, const Point& center, double radius, std::size_t samples,
                       std::uint64_t seed) {
  if (!(radius > 0)) throw std::invalid_argument("lipschitz_probe: radius must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif;
  const auto dim = static_cast<Eigen::Index>(center.size());

  auto unit = [&] {
    Eigen::VectorXd d(dim);
    do {
      for (Eigen::Index i = 0; i < dim; ++i) d[i] = gauss(rng);
    } while (d.norm() == 0.0);
    return Eigen::VectorXd(d / d.norm());
  };
  auto in_ball = [&] {
    const double rho = radius * std::pow(unif(rng), 1.0 / static_cast<double>(dim));
    return Eigen::VectorXd(center.vec() + rho * unit());
  };

  double best = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Eigen::VectorXd x = in_ball();
    Eigen::VectorXd y;
    if (k % 2 == 0) {
      y = in_ball();
    } else {
      const Eigen::VectorXd step = 1e-3 * radius * unif(rng) * unit();
      y = x + step;
      if ((y - center.vec()).norm() > radius) y = x - step;
      if ((y - center.vec()).norm() > radius) continue;
    }
    const double gap = (x - y).norm();
    if (gap == 0.0) continue;
    const Point px(center.shape(), x);
    const Point py(center.shape(), y);
    best = std::max(best, distance(obj.grad(px), obj.grad(py)) / gap);
  }
  return best;
}

StepAudit audit_pgd_trace(const FeasibleSet& set, const Objective& obj, const Trace& trace, const SolverConfig& cfg) {
  StepAudit a;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!set.contains(trace.iterates[i])) ++a.infeasible_iterates;
    if (i + 1 == trace.size()) break;
    ++a.steps;
    const Point& x = trace.iterates[i];
    const Point& next = trace.iterates[i + 1];
    const double mu = trace.mu_values[i];
    const double alpha = trace.alphas[i + 1];
    const Point g = obj.grad(x);
    const Point step = next - x;
    const double f_next = trace.f_values[i + 1];
    const double slack = 1e-12 * (1.0 + std::abs(mu));

    if (f_next > mu + cfg.c * inner(g, step) + slack) ++a.armijo_violations;
    const double ns = norm(step);
    if (f_next > mu - cfg.c / (2.0 * alpha) * ns * ns + slack) ++a.sufficient_decrease_violations;
    if (!set.contains(x)) continue;  // already counted
    const TranslationCheck tc = projected_translation_check(set, x, alpha * g);
    if (!tc.distance_bound || !tc.inner_bound) ++a.translation_violations;
  }
  return a;
}

RuleAudit audit_nonmonotone_rule(const Trace& trace, const SolverConfig& cfg) {
  RuleAudit a;
  if (trace.empty()) return a;
  const double slack = 1e-12 * (1.0 + std::abs(trace.f_values.front()));
  const double f0 = trace.f_values.front();

  double prev_window = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double f = trace.f_values[i];
    const double mu = trace.mu_values[i];
    if (f > f0 + slack) a.in_initial_sublevel_set = false;
    if (mu < f - slack) a.mu_dominates_f = false;
    if (const auto* max_rule = std::get_if<MaxRule>(&cfg.rule)) {
      const double window = mu_update_max(trace.f_values, i, max_rule->window);
      if (i > 0 && window > prev_window + slack) a.window_max_nonincreasing = false;
      prev_window = window;
    } else if (i > 0 && mu > trace.mu_values[i - 1] + slack) {
      a.mu_nonincreasing = false;
    }
  }
  return a;
}

}  // namespace ncpgd
