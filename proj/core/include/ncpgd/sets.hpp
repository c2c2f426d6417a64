#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncpgd/point.hpp"

namespace ncpgd {

/// Absolute tolerance on the distance to the set used by membership tests.
inline constexpr double kMembershipTol = 1e-9;

/// A nonempty closed subset C of a Euclidean space with an exact projection
/// and closed-form tangent and normal cones.
///
/// Every cone query takes a base point x that must lie in C (within
/// kMembershipTol); an InfeasiblePointError is thrown otherwise. Queries are
/// const and the objects are immutable, so one set can be shared by any
/// number of concurrent solver runs.
class FeasibleSet {
 public:
  virtual ~FeasibleSet() = default;

  /// Textual form accepted by parse_set_spec, e.g. "sparse:n=10,s=3".
  virtual std::string spec() const = 0;
  virtual Shape ambient_shape() const = 0;

  /// One element of P_C(x), chosen by a deterministic tie-breaking rule.
  Point project(const Point& x) const;
  /// True iff d(x, C) <= tol.
  bool contains(const Point& x, double tol = kMembershipTol) const;

  /// Nearest point of the regular normal cone to v, and the distance to it.
  Point project_regular_normal(const Point& x, const Point& v) const;
  double dist_regular_normal(const Point& x, const Point& v) const;

  /// Distance to the proximal normal cone. The proximal cone can fail to be
  /// closed, in which case this is an infimum that is not attained; use
  /// in_proximal_normal for membership.
  double dist_proximal_normal(const Point& x, const Point& v) const;
  bool in_proximal_normal(const Point& x, const Point& v, double tol = kMembershipTol) const;

  /// Nearest point of the (limiting) normal cone to v.
  Point project_general_normal(const Point& x, const Point& v) const;
  double dist_general_normal(const Point& x, const Point& v) const;
  bool in_general_normal(const Point& x, const Point& v, double tol = kMembershipTol) const;

  /// One element of P_{T_C(x)}(v). Throws UnsupportedOperation where the
  /// set has no tangent projection.
  Point project_tangent(const Point& x, const Point& v) const;

  /// Index of the stratum containing x; strata are numbered 0..top_stratum()
  /// with closure(S_i) = S_0 u ... u S_i.
  int stratum_id(const Point& x) const;
  virtual int top_stratum() const = 0;

  /// The point of the lowest stratum within `radius` of x (x itself projected
  /// onto C if no lower stratum is that close). Used to turn the estimate of
  /// a limit point reached only asymptotically into a point of the stratum
  /// the sequence converges to.
  Point snap_to_stratum(const Point& x, double radius) const;

 protected:
  virtual Point do_project(const Point& x) const = 0;
  virtual Point do_project_regular_normal(const Point& x, const Point& v) const = 0;
  virtual Point do_project_general_normal(const Point& x, const Point& v) const = 0;
  virtual Point do_project_tangent(const Point& x, const Point& v) const = 0;
  virtual int do_stratum_id(const Point& x) const = 0;
  virtual Point do_snap_to_stratum(const Point& x, double radius) const = 0;
  /// Defaults to d(v, N^_C(x)) <= tol, i.e. proximal and regular normals agree.
  virtual bool do_in_proximal_normal(const Point& x, const Point& v, double tol) const;

  void require_shape(const Point& x) const;
  void require_on_set(const Point& x) const;
};

using SetPtr = std::shared_ptr<const FeasibleSet>;

/// R^n_{<=s}: vectors with at most s nonzero entries, 0 < s < n.
class SparseSet final : public FeasibleSet {
 public:
  SparseSet(std::size_t n, std::size_t s);

  std::size_t n() const noexcept { return n_; }
  std::size_t s() const noexcept { return s_; }
  std::string spec() const override;
  Shape ambient_shape() const override { return Shape::vector(n_); }
  int top_stratum() const override { return static_cast<int>(s_); }

 protected:
  Point do_project(const Point& x) const override;
  Point do_project_regular_normal(const Point& x, const Point& v) const override;
  Point do_project_general_normal(const Point& x, const Point& v) const override;
  Point do_project_tangent(const Point& x, const Point& v) const override;
  int do_stratum_id(const Point& x) const override;
  Point do_snap_to_stratum(const Point& x, double radius) const override;

 private:
  std::size_t n_;
  std::size_t s_;
};

/// R^n_{<=s} intersected with the nonnegative orthant.
class NonnegSparseSet final : public FeasibleSet {
 public:
  NonnegSparseSet(std::size_t n, std::size_t s);

  std::size_t n() const noexcept { return n_; }
  std::size_t s() const noexcept { return s_; }
  std::string spec() const override;
  Shape ambient_shape() const override { return Shape::vector(n_); }
  int top_stratum() const override { return static_cast<int>(s_); }

 protected:
  Point do_project(const Point& x) const override;
  Point do_project_regular_normal(const Point& x, const Point& v) const override;
  Point do_project_general_normal(const Point& x, const Point& v) const override;
  Point do_project_tangent(const Point& x, const Point& v) const override;
  int do_stratum_id(const Point& x) const override;
  Point do_snap_to_stratum(const Point& x, double radius) const override;

 private:
  std::size_t n_;
  std::size_t s_;
};

/// The determinantal variety R^{m x n}_{<=r}, r < min(m, n).
class LowRankSet final : public FeasibleSet {
 public:
  LowRankSet(std::size_t m, std::size_t n, std::size_t r);

  std::size_t rank_bound() const noexcept { return r_; }
  std::string spec() const override;
  Shape ambient_shape() const override { return Shape::matrix(m_, n_); }
  int top_stratum() const override { return static_cast<int>(r_); }

 protected:
  Point do_project(const Point& x) const override;
  Point do_project_regular_normal(const Point& x, const Point& v) const override;
  Point do_project_general_normal(const Point& x, const Point& v) const override;
  Point do_project_tangent(const Point& x, const Point& v) const override;
  int do_stratum_id(const Point& x) const override;
  Point do_snap_to_stratum(const Point& x, double radius) const override;

 private:
  std::size_t m_;
  std::size_t n_;
  std::size_t r_;
};

/// S^+_{<=r}(n): symmetric positive-semidefinite n x n matrices of rank at
/// most r, r < n, as a subset of R^{n x n}.
class PsdLowRankSet final : public FeasibleSet {
 public:
  PsdLowRankSet(std::size_t n, std::size_t r);

  std::size_t rank_bound() const noexcept { return r_; }
  std::string spec() const override;
  Shape ambient_shape() const override { return Shape::matrix(n_, n_); }
  int top_stratum() const override { return static_cast<int>(r_); }

 protected:
  Point do_project(const Point& x) const override;
  Point do_project_regular_normal(const Point& x, const Point& v) const override;
  Point do_project_general_normal(const Point& x, const Point& v) const override;
  /// Not provided: throws UnsupportedOperation.
  Point do_project_tangent(const Point& x, const Point& v) const override;
  int do_stratum_id(const Point& x) const override;
  Point do_snap_to_stratum(const Point& x, double radius) const override;

 private:
  std::size_t n_;
  std::size_t r_;
};

/// The planar cusp curve {(t, max(0, t^{3/5})) : t in R}: the nonpositive
/// x1 half-axis glued at the origin to the branch x2 = x1^{3/5}. At the
/// origin the proximal, regular and general normal cones are all different.
class CurveSet final : public FeasibleSet {
 public:
  std::string spec() const override { return "curve"; }
  Shape ambient_shape() const override { return Shape::vector(2); }
  int top_stratum() const override { return 1; }

 protected:
  Point do_project(const Point& x) const override;
  Point do_project_regular_normal(const Point& x, const Point& v) const override;
  Point do_project_general_normal(const Point& x, const Point& v) const override;
  Point do_project_tangent(const Point& x, const Point& v) const override;
  int do_stratum_id(const Point& x) const override;
  Point do_snap_to_stratum(const Point& x, double radius) const override;
  bool do_in_proximal_normal(const Point& x, const Point& v, double tol) const override;
};

/// The region above the cusp curve: {(x1, x2) : x2 >= max(0, x1^{3/5})}.
class EpigraphSet final : public FeasibleSet {
 public:
  std::string spec() const override { return "epigraph"; }
  Shape ambient_shape() const override { return Shape::vector(2); }
  int top_stratum() const override { return 2; }

 protected:
  Point do_project(const Point& x) const override;
  Point do_project_regular_normal(const Point& x, const Point& v) const override;
  Point do_project_general_normal(const Point& x, const Point& v) const override;
  Point do_project_tangent(const Point& x, const Point& v) const override;
  int do_stratum_id(const Point& x) const override;
  Point do_snap_to_stratum(const Point& x, double radius) const override;
  bool do_in_proximal_normal(const Point& x, const Point& v, double tol) const override;
};

/// Nearest point of the cusp curve to an arbitrary planar point. Exposed for
/// the epigraph projection and for tests.
Point project_onto_cusp_curve(const Point& x);

/// Parses "sparse:n=10,s=3", "nonneg-sparse:n=10,s=3", "lowrank:m=8,n=8,r=2",
/// "psd:n=6,r=2", "curve" or "epigraph". Throws ParseError.
SetPtr parse_set_spec(std::string_view spec);

/// Step sizes 2^{-k}, k = 0..20.
std::vector<double> default_witness_alphas();

struct ProximalWitness {
  bool found = false;
  double alpha = 0.0;  ///< the step that certified membership when found

  explicit operator bool() const noexcept { return found; }
};

/// Sampling certificate for v being a proximal normal at x: succeeds if
/// x is a projection of x + alpha v for one of the trial steps, tested as
/// ||P_C(x + alpha v) - x|| <= alpha * tol up to rounding. Works on any set.
/// Near irregular points the certificate loses resolution as alpha -> 0,
/// so it is sufficient evidence only for moderate alphas.
ProximalWitness in_proximal_normal_witness(const FeasibleSet& set, const Point& x, const Point& v,
                                           std::span<const double> alphas, double tol = kMembershipTol);

/// Outcome of the projected-translation inequalities for y = P_C(x - v):
///   ||y - x|| <= 2 ||v||   and   2 <v, y - x> <= -||y - x||^2,
/// both strict when x is not in P_C(x - v). The non-strict flags allow for
/// floating-point rounding; the strict flags do not.
struct TranslationCheck {
  bool distance_bound = false;
  bool inner_bound = false;
  bool distance_strict = false;
  bool inner_strict = false;
  double step = 0.0;  ///< ||y - x||
};

TranslationCheck projected_translation_check(const FeasibleSet& set, const Point& x, const Point& v);

}  // namespace ncpgd
