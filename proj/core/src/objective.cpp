#include "ncpgd/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "ncpgd/errors.hpp"

namespace ncpgd {

Objective::Objective(std::string name, EvalFn eval, GradFn grad)
    : name_(std::move(name)), eval_(std::move(eval)), grad_(std::move(grad)) {}

Point Objective::grad(const Point& x) const {
  Point g = grad_(x);
  require_same_shape(g, x);
  return g;
}

Objective least_squares(Point target) {
  return Objective(
      "least-squares",
      [target](const Point& x) {
        require_same_shape(x, target);
        return 0.5 * (x.vec() - target.vec()).squaredNorm();
      },
      [target](const Point& x) { return x - target; });
}

Objective constant_objective(double value) {
  if (!std::isfinite(value)) throw NonFiniteError("constant objective value must be finite");
  return Objective(
      "constant", [value](const Point&) { return value; }, [](const Point& x) { return Point::zeros(x.shape()); });
}

Objective quartic_norm() {
  return Objective(
      "quartic",
      [](const Point& x) {
        const double sq = x.vec().squaredNorm();
        return 0.25 * sq * sq;
      },
      [](const Point& x) { return x.vec().squaredNorm() * x; });
}

Objective cubic_sum() {
  return Objective(
      "cubic", [](const Point& x) { return x.vec().array().cube().sum(); },
      [](const Point& x) { return Point(x.shape(), Eigen::VectorXd(3.0 * x.vec().array().square())); });
}

Objective cusp_example_objective() {
  auto check = [](const Point& x) {
    if (x.shape() != Shape::vector(2)) throw ShapeError("cusp example objective is defined on R^2");
  };
  return Objective(
      "cusp-example",
      [check](const Point& x) {
        check(x);
        return 0.5 * (x[0] - 1.0) * (x[0] - 1.0) + std::pow(std::abs(x[1]), 1.5);
      },
      [check](const Point& x) {
        check(x);
        const double s = x[1] > 0 ? 1.0 : (x[1] < 0 ? -1.0 : 0.0);
        return Point::of({x[0] - 1.0, 1.5 * s * std::sqrt(std::abs(x[1]))});
      });
}

double check_gradient(const Objective& obj, const Point& x, double h) {
  if (!(h > 0)) throw std::invalid_argument("check_gradient: step h must be positive");
  const Point g = obj.grad(x);
  double worst = 0.0;
  Eigen::VectorXd probe = x.vec();
  for (Eigen::Index i = 0; i < probe.size(); ++i) {
    const double xi = probe[i];
    const double hi = xi + h;
    const double lo = xi - h;
    probe[i] = hi;
    const double fp = obj.eval(Point(x.shape(), probe));
    probe[i] = lo;
    const double fm = obj.eval(Point(x.shape(), probe));
    probe[i] = xi;
    if (!std::isfinite(fp) || !std::isfinite(fm)) throw NonFiniteError("check_gradient: non-finite f evaluation");
    // the representable step, not 2h
    const double fd = (fp - fm) / (hi - lo);
    const double gi = g[static_cast<std::size_t>(i)];
    worst = std::max(worst, std::abs(fd - gi) / (1.0 + std::abs(gi)));
  }
  return worst;
}

}  // namespace ncpgd
