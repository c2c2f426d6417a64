#pragma once

#include <functional>
#include <string>

#include "ncpgd/point.hpp"

namespace ncpgd {

/// A continuously differentiable objective f together with its gradient.
/// Both callables must be deterministic and the gradient must return a point
/// of the argument's shape.
class Objective {
 public:
  using EvalFn = std::function<double(const Point&)>;
  using GradFn = std::function<Point(const Point&)>;

  Objective(std::string name, EvalFn eval, GradFn grad);

  double eval(const Point& x) const { return eval_(x); }
  /// Throws ShapeError if the user gradient returns the wrong shape.
  Point grad(const Point& x) const;
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
  EvalFn eval_;
  GradFn grad_;
};

/// f(x) = 1/2 ||x - target||^2, grad f(x) = x - target.
Objective least_squares(Point target);

/// f(x) = value everywhere.
Objective constant_objective(double value);

/// f(x) = 1/4 ||x||^4, grad f(x) = ||x||^2 x. Its gradient is locally but not
/// globally Lipschitz.
Objective quartic_norm();

/// f(x) = sum_i x_i^3.
Objective cubic_sum();

/// f(x1, x2) = 1/2 (x1 - 1)^2 + |x2|^{3/2} on R^2. Continuously differentiable
/// with a gradient that is not locally Lipschitz on the x1 axis; its minimizer
/// over the cusp epigraph is the origin, where -grad f is a regular but not a
/// proximal normal.
Objective cusp_example_objective();

/// Largest coordinatewise |central difference - grad_i| / (1 + |grad_i|).
/// Throws NonFiniteError on a non-finite evaluation and std::invalid_argument
/// if h <= 0.
double check_gradient(const Objective& obj, const Point& x, double h = 1e-6);

}  // namespace ncpgd
