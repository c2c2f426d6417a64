#include <cmath>
#include <limits>

#include <doctest.h>

#include "ncpgd/errors.hpp"
#include "ncpgd/instances.hpp"
#include "ncpgd/objective.hpp"
#include "ncpgd/point.hpp"

using namespace ncpgd;

TEST_CASE("inner product examples") {
  CHECK(inner(Point::of({1, 0}), Point::of({0, 1})) == 0.0);
  CHECK(inner(Point::of({1, 2}), Point::of({3, 4})) == 11.0);

  InstanceGenerator gen(1);
  for (int k = 0; k < 100; ++k) {
    const Point x = gen.ambient(Shape::vector(7));
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) ss += x[i] * x[i];
    CHECK(inner(x, x) == doctest::Approx(ss).epsilon(1e-14));
    CHECK(norm(x) * norm(x) == doctest::Approx(ss).epsilon(1e-14));
  }
}

TEST_CASE("norm examples") {
  CHECK(norm(Point::of({3, 4})) == 5.0);
  CHECK(norm(Point::zeros(Shape::vector(3))) == 0.0);
  InstanceGenerator gen(2);
  for (int k = 0; k < 50; ++k) {
    const Point a = gen.ambient(Shape::matrix(2, 3));
    CHECK(norm(-a) == norm(a));
    CHECK(norm(a) > 0.0);
  }
}

TEST_CASE("Cauchy-Schwarz on random pairs") {
  InstanceGenerator gen(3);
  for (int k = 0; k < 1000; ++k) {
    const Shape s = k % 2 ? Shape::vector(5) : Shape::matrix(3, 2);
    const Point a = gen.ambient(s), b = gen.ambient(s, 3.0);
    CHECK(std::abs(inner(a, b)) <= norm(a) * norm(b) * (1 + 1e-15));
  }
}

TEST_CASE("points reject bad shapes and non-finite data") {
  CHECK_THROWS_AS(Point(Shape::vector(3), std::vector<double>{1, 2}), ShapeError);
  CHECK_THROWS_AS(Point::of({1, std::numeric_limits<double>::quiet_NaN()}), NonFiniteError);
  CHECK_THROWS_AS(Point::of({std::numeric_limits<double>::infinity()}), NonFiniteError);

  const Point v = Point::of({1, 2, 3, 4});
  const Point m = Point::from_matrix((Eigen::MatrixXd(2, 2) << 1, 2, 3, 4).finished());
  CHECK(v.vec() == m.vec());
  CHECK_THROWS_AS(inner(v, m), ShapeError);
  CHECK_THROWS_AS(v + m, ShapeError);
  CHECK_THROWS_AS(distance(v, Point::of({1, 2, 3})), ShapeError);
  CHECK_THROWS_AS(Point::of({1e308}) * 1e10, NonFiniteError);
}

TEST_CASE("matrix points are row-major with the Frobenius inner product") {
  Eigen::MatrixXd a(2, 3);
  a << 1, 2, 3, 4, 5, 6;
  const Point p = Point::from_matrix(a);
  CHECK(p.shape() == Shape::matrix(2, 3));
  CHECK(p[1] == 2.0);
  CHECK(p[3] == 4.0);
  CHECK(p.matrix() == a);
  CHECK(inner(p, p) == doctest::Approx((a.array() * a.array()).sum()));
  CHECK(Shape::matrix(2, 3).to_string() != Shape::vector(6).to_string());
  CHECK_FALSE(Shape::matrix(2, 3) == Shape::vector(6));
}

TEST_CASE("point arithmetic") {
  const Point a = Point::of({1, -2}), b = Point::of({0.5, 4});
  CHECK((a + b).vec() == Eigen::Vector2d(1.5, 2));
  CHECK((a - b).vec() == Eigen::Vector2d(0.5, -6));
  CHECK((2.0 * a).vec() == Eigen::Vector2d(2, -4));
  CHECK((a * 2.0).vec() == (2.0 * a).vec());
  CHECK((-a).vec() == Eigen::Vector2d(-1, 2));
  CHECK(distance(a, b) == doctest::Approx(std::hypot(0.5, 6)));
}

TEST_CASE("objectives") {
  const Objective f = least_squares(Point::of({1, 0}));
  CHECK(f.eval(Point::of({0, 1})) == 1.0);
  CHECK(f.grad(Point::of({0, 1})).vec() == Eigen::Vector2d(-1, 1));
  CHECK_THROWS_AS(f.eval(Point::of({0, 1, 2})), ShapeError);

  const Objective g = constant_objective(2.5);
  CHECK(g.eval(Point::of({7, 8})) == 2.5);
  CHECK(norm(g.grad(Point::of({7, 8}))) == 0.0);

  const Objective q = quartic_norm();
  CHECK(q.eval(Point::of({1, 1})) == doctest::Approx(1.0));
  CHECK(q.grad(Point::of({1, 1})).vec() == Eigen::Vector2d(2, 2));

  const Objective cusp = cusp_example_objective();
  CHECK(cusp.grad(Point::of({0, 0})).vec() == Eigen::Vector2d(-1, 0));
  CHECK(cusp.eval(Point::of({0, 4})) == doctest::Approx(0.5 + 8));
  CHECK_THROWS(cusp.eval(Point::of({0, 0, 0})));

  // A user gradient of the wrong shape is rejected.
  const Objective bad("bad", [](const Point&) { return 0.0; }, [](const Point&) { return Point::of({1}); });
  CHECK_THROWS_AS(bad.grad(Point::of({1, 2})), ShapeError);
}

TEST_CASE("check_gradient examples") {
  CHECK(check_gradient(least_squares(Point::of({1, 0})), Point::of({0, 1}), 1e-6) < 1e-6);
  CHECK(check_gradient(constant_objective(3.0), Point::of({0.3, -2})) == doctest::Approx(0.0));
  CHECK(check_gradient(cubic_sum(), Point::of({1.0}), 1e-5) < 1e-8);
  CHECK_THROWS_AS(check_gradient(cubic_sum(), Point::of({1.0}), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(check_gradient(cubic_sum(), Point::of({1.0}), -1.0), std::invalid_argument);

  const Objective blowup("blowup", [](const Point& x) { return x[0] > 0 ? std::numeric_limits<double>::infinity() : 0.0; },
                         [](const Point& x) { return Point::zeros(x.shape()); });
  CHECK_THROWS_AS(check_gradient(blowup, Point::of({0.0})), NonFiniteError);

  // A wrong gradient is detected.
  const Objective wrong("wrong", [](const Point& x) { return x[0] * x[0]; },
                        [](const Point& x) { return Point::of({x[0]}); });
  CHECK(check_gradient(wrong, Point::of({1.0})) > 0.1);
}

TEST_CASE("check_gradient on every shipped objective at random points") {
  InstanceGenerator gen(4);
  const std::vector<Objective> objs{least_squares(Point::of({0.3, -1, 2})), constant_objective(-1), quartic_norm(),
                                    cubic_sum(), cusp_example_objective()};
  for (const auto& f : objs) {
    const std::size_t n = f.name() == "least-squares" ? 3 : 2;
    for (int k = 0; k < 100; ++k) CHECK(check_gradient(f, gen.ambient(Shape::vector(n))) < 1e-5);
  }
}

TEST_CASE("error hierarchy") {
  const ParseError e("set", "bad");
  CHECK(e.field() == "set");
  CHECK(std::string(e.what()) == "set: bad");
  const Error& base = e;
  CHECK(dynamic_cast<const ParseError*>(&base) != nullptr);
}
