#include <cmath>

#include <fmt/format.h>

#include "ncpgd/errors.hpp"
#include "ncpgd/sets.hpp"

namespace ncpgd {

void FeasibleSet::require_shape(const Point& x) const {
  if (x.shape() != ambient_shape()) {
    throw ShapeError(fmt::format("{}: expected a point of shape {}, got {}", spec(), ambient_shape().to_string(),
                                 x.shape().to_string()));
  }
}

void FeasibleSet::require_on_set(const Point& x) const {
  if (!contains(x)) throw InfeasiblePointError(fmt::format("{}: base point is not in the set", spec()));
}

Point FeasibleSet::project(const Point& x) const {
  require_shape(x);
  return do_project(x);
}

bool FeasibleSet::contains(const Point& x, double tol) const {
  require_shape(x);
  return distance(x, do_project(x)) <= tol;
}

Point FeasibleSet::project_regular_normal(const Point& x, const Point& v) const {
  require_on_set(x);
  require_shape(v);
  return do_project_regular_normal(x, v);
}

double FeasibleSet::dist_regular_normal(const Point& x, const Point& v) const {
  return distance(v, project_regular_normal(x, v));
}

double FeasibleSet::dist_proximal_normal(const Point& x, const Point& v) const {
  // closure(N^P) = N^ for every shipped set
  return dist_regular_normal(x, v);
}

bool FeasibleSet::in_proximal_normal(const Point& x, const Point& v, double tol) const {
  require_on_set(x);
  require_shape(v);
  return do_in_proximal_normal(x, v, tol);
}

bool FeasibleSet::do_in_proximal_normal(const Point& x, const Point& v, double tol) const {
  return distance(v, do_project_regular_normal(x, v)) <= tol;
}

Point FeasibleSet::project_general_normal(const Point& x, const Point& v) const {
  require_on_set(x);
  require_shape(v);
  return do_project_general_normal(x, v);
}

double FeasibleSet::dist_general_normal(const Point& x, const Point& v) const {
  return distance(v, project_general_normal(x, v));
}

bool FeasibleSet::in_general_normal(const Point& x, const Point& v, double tol) const {
  return dist_general_normal(x, v) <= tol;
}

Point FeasibleSet::project_tangent(const Point& x, const Point& v) const {
  require_on_set(x);
  require_shape(v);
  return do_project_tangent(x, v);
}

int FeasibleSet::stratum_id(const Point& x) const {
  require_on_set(x);
  return do_stratum_id(x);
}

Point FeasibleSet::snap_to_stratum(const Point& x, double radius) const {
  require_shape(x);
  return do_snap_to_stratum(x, radius);
}

std::vector<double> default_witness_alphas() {
  std::vector<double> alphas;
  for (int k = 0; k <= 20; ++k) alphas.push_back(std::ldexp(1.0, -k));
  return alphas;
}

namespace {
// Rounding allowance of a projection relative to the size of the point.
constexpr double kProjectionRounding = 1e-14;
}  // namespace

ProximalWitness in_proximal_normal_witness(const FeasibleSet& set, const Point& x, const Point& v,
                                           std::span<const double> alphas, double tol) {
  require_same_shape(x, v);
  if (norm(v) == 0.0) return {true, alphas.empty() ? 0.0 : alphas.front()};
  const double slack = kProjectionRounding * (1.0 + norm(x));
  for (double alpha : alphas) {
    if (!(alpha > 0)) continue;
    const Point y = set.project(x + alpha * v);
    if (distance(y, x) <= alpha * tol + slack) return {true, alpha};
  }
  return {};
}

TranslationCheck projected_translation_check(const FeasibleSet& set, const Point& x, const Point& v) {
  require_same_shape(x, v);
  if (!set.contains(x)) throw InfeasiblePointError(set.spec() + ": base point is not in the set");
  const Point y = set.project(x - v);
  const Point step = y - x;
  const double nv = norm(v);
  const double ns = norm(step);
  const double ip = inner(v, step);
  // Scale of the rounding error in the computed projection y.
  const double delta = 1e-12 * (1.0 + norm(x) + nv);

  TranslationCheck out;
  out.step = ns;
  out.distance_bound = ns <= 2.0 * nv + delta;
  out.inner_bound = 2.0 * ip + ns * ns <= 2.0 * delta * (nv + ns) + delta * delta;
  out.distance_strict = ns < 2.0 * nv;
  out.inner_strict = 2.0 * ip < -ns * ns;
  return out;
}

}  // namespace ncpgd
