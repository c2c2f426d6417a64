#include <array>
#include <cmath>
#include <vector>

#include "ncpgd/errors.hpp"
#include "ncpgd/sets.hpp"

namespace ncpgd {

namespace {

// Points within this distance of the origin are treated as the cusp.
constexpr double kOriginTol = 1e-12;

double cusp_height(double t) { return t > 0 ? std::pow(t, 0.6) : 0.0; }

// Critical points of u -> ||(u^5, u^3) - x||^2 on u > 0 are the roots of
// p(u) = 5u^7 + 3u^3 - 5 x1 u^2 - 3 x2.
double stationarity_poly(double u, double x1, double x2) {
  const double u2 = u * u;
  const double u3 = u2 * u;
  return 5.0 * u3 * u3 * u + 3.0 * u3 - 5.0 * x1 * u2 - 3.0 * x2;
}

double bisect_root(double lo, double hi, double x1, double x2) {
  double plo = stationarity_poly(lo, x1, x2);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double pm = stationarity_poly(mid, x1, x2);
    if (pm == 0.0) return mid;
    if ((pm < 0) == (plo < 0)) {
      lo = mid;
      plo = pm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Location of a point of the curve (or of the epigraph boundary).
enum class Piece { Origin, Ray, Branch };

struct Located {
  Piece piece;
  // unit outward normal of the epigraph on the branch; (0, -1) on the ray
  std::array<double, 2> normal{0.0, -1.0};
  // unit tangent oriented towards increasing t
  std::array<double, 2> tangent{1.0, 0.0};
};

Located locate_on_curve(const Point& p) {
  if (std::hypot(p[0], p[1]) <= kOriginTol) return {Piece::Origin};
  if (p[0] <= 0.0) return {Piece::Ray};
  const double u = std::pow(p[0], 0.2);
  // d/du (u^5, u^3) = u^2 (5u^2, 3)
  const double tx = 5.0 * u * u;
  const double ty = 3.0;
  const double len = std::hypot(tx, ty);
  return {Piece::Branch, {ty / len, -tx / len}, {tx / len, ty / len}};
}

double dot(const std::array<double, 2>& a, const Point& v) { return a[0] * v[0] + a[1] * v[1]; }

Point along(const std::array<double, 2>& dir, double s) { return Point::of({s * dir[0], s * dir[1]}); }

Point nearer(const Point& v, const Point& a, const Point& b) { return distance(v, b) < distance(v, a) ? b : a; }

// Proximal normals at the cusp: the regular cone minus the open ray (0, inf) x {0}.
bool cusp_proximal(const Point& v, double tol) {
  const double reg = std::hypot(std::min(v[0], 0.0), std::max(v[1], 0.0));
  if (reg > tol) return false;
  return !(v[0] > tol && std::abs(v[1]) <= tol);
}

}  // namespace

Point project_onto_cusp_curve(const Point& x) {
  if (x.shape() != Shape::vector(2)) throw ShapeError("cusp curve lives in R^2");
  const double x1 = x[0];
  const double x2 = x[1];

  // Candidate on the half-axis t <= 0 (includes the origin).
  Point best = Point::of({std::min(x1, 0.0), 0.0});
  double best_d = distance(x, best);

  // Candidates on the branch (u^5, u^3), u > 0. A better point than the
  // origin is within 2||x|| of the origin, which bounds u.
  const double r = std::hypot(x1, x2);
  if (r == 0.0) return best;
  const double ubound = std::max(std::pow(2.0 * r, 0.2), std::cbrt(2.0 * r)) * (1.0 + 1e-9);

  // Linear grid plus a geometric refinement towards 0, where minimizers of
  // points near the cusp live.
  std::vector<double> grid;
  constexpr int kLinear = 1024;
  for (int k = 60; k >= 1; --k) grid.push_back(std::ldexp(ubound / kLinear, -k));
  for (int j = 1; j <= kLinear; ++j) grid.push_back(ubound * j / kLinear);

  auto consider = [&](double u) {
    const Point c = Point::of({std::pow(u, 5), u * u * u});
    const double d = distance(x, c);
    if (d < best_d) {
      best = c;
      best_d = d;
    }
  };

  double prev_u = grid.front();
  double prev_p = stationarity_poly(prev_u, x1, x2);
  if (prev_p == 0.0) consider(prev_u);
  for (std::size_t j = 1; j < grid.size(); ++j) {
    const double u = grid[j];
    const double pu = stationarity_poly(u, x1, x2);
    if (pu == 0.0) {
      consider(u);
    } else if (prev_p != 0.0 && (pu < 0) != (prev_p < 0)) {
      consider(bisect_root(prev_u, u, x1, x2));
    }
    prev_u = u;
    prev_p = pu;
  }
  return best;
}

// ---------------------------------------------------------------------------
// CurveSet

Point CurveSet::do_project(const Point& x) const { return project_onto_cusp_curve(x); }

Point CurveSet::do_project_regular_normal(const Point& x, const Point& v) const {
  const Located loc = locate_on_curve(do_project(x));
  switch (loc.piece) {
    case Piece::Origin:  // [0, inf) x (-inf, 0]
      return Point::of({std::max(v[0], 0.0), std::min(v[1], 0.0)});
    case Piece::Ray:
      return Point::of({0.0, v[1]});
    case Piece::Branch:
      return along(loc.normal, dot(loc.normal, v));
  }
  return v;
}

Point CurveSet::do_project_general_normal(const Point& x, const Point& v) const {
  const Point p = do_project(x);
  const Point regular = do_project_regular_normal(p, v);
  if (locate_on_curve(p).piece != Piece::Origin) return regular;
  // N(0) = N^(0) u T(0)
  return nearer(v, regular, do_project_tangent(p, v));
}

Point CurveSet::do_project_tangent(const Point& x, const Point& v) const {
  const Located loc = locate_on_curve(do_project(x));
  switch (loc.piece) {
    case Piece::Origin:  // ({0} x [0, inf)) u ((-inf, 0] x {0})
      return nearer(v, Point::of({0.0, std::max(v[1], 0.0)}), Point::of({std::min(v[0], 0.0), 0.0}));
    case Piece::Ray:
      return Point::of({v[0], 0.0});
    case Piece::Branch:
      return along(loc.tangent, dot(loc.tangent, v));
  }
  return v;
}

int CurveSet::do_stratum_id(const Point& x) const {
  return locate_on_curve(do_project(x)).piece == Piece::Origin ? 0 : 1;
}

Point CurveSet::do_snap_to_stratum(const Point& x, double radius) const {
  if (norm(x) <= radius) return Point::zeros(x.shape());
  return do_project(x);
}

bool CurveSet::do_in_proximal_normal(const Point& x, const Point& v, double tol) const {
  if (locate_on_curve(do_project(x)).piece == Piece::Origin) return cusp_proximal(v, tol);
  return distance(v, do_project_regular_normal(x, v)) <= tol;
}

// ---------------------------------------------------------------------------
// EpigraphSet

namespace {

bool above_boundary(const Point& x) { return x[1] >= cusp_height(x[0]); }

// Strictly inside, away from the boundary by more than rounding.
bool interior(const Point& x) { return x[1] - cusp_height(x[0]) > 1e-12 * (1.0 + std::abs(x[1])); }

}  // namespace

Point EpigraphSet::do_project(const Point& x) const {
  if (above_boundary(x)) return x;
  return project_onto_cusp_curve(x);
}

Point EpigraphSet::do_project_regular_normal(const Point& x, const Point& v) const {
  if (interior(x)) return Point::zeros(v.shape());
  const Located loc = locate_on_curve(project_onto_cusp_curve(x));
  switch (loc.piece) {
    case Piece::Origin:  // [0, inf) x (-inf, 0]
      return Point::of({std::max(v[0], 0.0), std::min(v[1], 0.0)});
    case Piece::Ray:
      return Point::of({0.0, std::min(v[1], 0.0)});
    case Piece::Branch:
      return along(loc.normal, std::max(dot(loc.normal, v), 0.0));
  }
  return v;
}

Point EpigraphSet::do_project_general_normal(const Point& x, const Point& v) const {
  // Clarke regular everywhere, including the cusp.
  return do_project_regular_normal(x, v);
}

Point EpigraphSet::do_project_tangent(const Point& x, const Point& v) const {
  if (interior(x)) return v;
  const Located loc = locate_on_curve(project_onto_cusp_curve(x));
  switch (loc.piece) {
    case Piece::Origin:  // (-inf, 0] x [0, inf)
      return Point::of({std::min(v[0], 0.0), std::max(v[1], 0.0)});
    case Piece::Ray:
      return Point::of({v[0], std::max(v[1], 0.0)});
    case Piece::Branch:
      return v - along(loc.normal, std::max(dot(loc.normal, v), 0.0));
  }
  return v;
}

int EpigraphSet::do_stratum_id(const Point& x) const {
  if (interior(x)) return 2;
  return locate_on_curve(project_onto_cusp_curve(x)).piece == Piece::Origin ? 0 : 1;
}

Point EpigraphSet::do_snap_to_stratum(const Point& x, double radius) const {
  if (norm(x) <= radius) return Point::zeros(x.shape());
  const Point boundary = project_onto_cusp_curve(x);
  if (distance(x, boundary) <= radius) return boundary;
  return do_project(x);
}

bool EpigraphSet::do_in_proximal_normal(const Point& x, const Point& v, double tol) const {
  if (!interior(x) && locate_on_curve(project_onto_cusp_curve(x)).piece == Piece::Origin) {
    return cusp_proximal(v, tol);
  }
  return distance(v, do_project_regular_normal(x, v)) <= tol;
}

}  // namespace ncpgd
