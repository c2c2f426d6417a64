#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <fmt/format.h>

#include "ncpgd/errors.hpp"
#include "ncpgd/sets.hpp"

namespace ncpgd {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Relative threshold below which a singular value or eigenvalue counts as 0.
constexpr double kRankTol = 1e-12;

// Makes the first entry of column i that is not negligible positive. Applied
// to paired columns so that a u_i v_i^T product is unchanged.
bool first_entry_negative(const MatrixXd& m, Index col) {
  for (Index i = 0; i < m.rows(); ++i) {
    if (std::abs(m(i, col)) > 1e-14) return m(i, col) < 0;
  }
  return false;
}

struct FullSvd {
  MatrixXd u;      // m x m
  MatrixXd v;      // n x n
  VectorXd sigma;  // min(m, n), descending
};

FullSvd full_svd(const MatrixXd& a) {
  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success || !svd.singularValues().allFinite()) {
    throw DecompositionError("SVD did not converge");
  }
  FullSvd f{svd.matrixU(), svd.matrixV(), svd.singularValues()};
  const Index p = f.sigma.size();
  for (Index i = 0; i < f.u.cols(); ++i) {
    if (first_entry_negative(f.u, i)) {
      f.u.col(i) *= -1.0;
      if (i < p) f.v.col(i) *= -1.0;
    }
  }
  for (Index i = p; i < f.v.cols(); ++i) {
    if (first_entry_negative(f.v, i)) f.v.col(i) *= -1.0;
  }
  return f;
}

struct SymEig {
  MatrixXd q;       // orthonormal eigenvectors as columns
  VectorXd lambda;  // descending
};

SymEig sym_eig(const MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s);
  if (es.info() != Eigen::Success) throw DecompositionError("symmetric eigensolver did not converge");
  const Index n = s.rows();
  SymEig e{MatrixXd(n, n), VectorXd(n)};
  for (Index i = 0; i < n; ++i) {
    e.lambda[i] = es.eigenvalues()[n - 1 - i];
    e.q.col(i) = es.eigenvectors().col(n - 1 - i);
    if (first_entry_negative(e.q, i)) e.q.col(i) *= -1.0;
  }
  return e;
}

Index numeric_rank(const VectorXd& values, std::size_t cap) {
  if (values.size() == 0) return 0;
  const double thr = kRankTol * std::max(1.0, values.cwiseAbs().maxCoeff());
  Index k = 0;
  for (Index i = 0; i < values.size(); ++i) {
    if (values[i] > thr) ++k;
  }
  return std::min(k, static_cast<Index>(cap));
}

MatrixXd truncate_rank(const MatrixXd& a, Index q) {
  if (a.size() == 0 || q >= std::min(a.rows(), a.cols())) return a;
  if (q <= 0) return MatrixXd::Zero(a.rows(), a.cols());
  const FullSvd f = full_svd(a);
  return f.u.leftCols(q) * f.sigma.head(q).asDiagonal() * f.v.leftCols(q).transpose();
}

MatrixXd sym(const MatrixXd& a) { return 0.5 * (a + a.transpose()); }
MatrixXd skew(const MatrixXd& a) { return 0.5 * (a - a.transpose()); }

// Projection of a symmetric matrix onto the negative-semidefinite cone.
MatrixXd negative_part(const MatrixXd& d) {
  if (d.size() == 0) return d;
  const SymEig e = sym_eig(sym(d));
  return e.q * e.lambda.cwiseMin(0.0).asDiagonal() * e.q.transpose();
}

// Nearest symmetric matrix of rank at most q (keep the q eigenvalues of
// largest magnitude).
MatrixXd truncate_sym_rank(const MatrixXd& d, Index q) {
  if (d.size() == 0 || q >= d.rows()) return d;
  const SymEig e = sym_eig(sym(d));
  std::vector<Index> idx(static_cast<std::size_t>(e.lambda.size()));
  for (Index i = 0; i < e.lambda.size(); ++i) idx[static_cast<std::size_t>(i)] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Index a, Index b) { return std::abs(e.lambda[a]) > std::abs(e.lambda[b]); });
  VectorXd kept = VectorXd::Zero(e.lambda.size());
  for (Index j = 0; j < q; ++j) kept[idx[static_cast<std::size_t>(j)]] = e.lambda[idx[static_cast<std::size_t>(j)]];
  return e.q * kept.asDiagonal() * e.q.transpose();
}

// Factors of a point of the low-rank variety: rank k and full singular bases.
struct LowRankFactors {
  FullSvd svd;
  Index k;
  MatrixXd u_perp() const { return svd.u.rightCols(svd.u.cols() - k); }
  MatrixXd v_perp() const { return svd.v.rightCols(svd.v.cols() - k); }
};

LowRankFactors low_rank_factors(const Point& x, std::size_t r) {
  FullSvd f = full_svd(x.matrix());
  const Index k = numeric_rank(f.sigma, r);
  return {std::move(f), k};
}

struct PsdFactors {
  SymEig eig;
  Index k;
  MatrixXd u() const { return eig.q.leftCols(k); }
  MatrixXd u_perp() const { return eig.q.rightCols(eig.q.cols() - k); }
};

PsdFactors psd_factors(const Point& x, std::size_t r) {
  SymEig e = sym_eig(sym(x.matrix()));
  const Index k = numeric_rank(e.lambda, r);
  return {std::move(e), k};
}

}  // namespace

// ---------------------------------------------------------------------------
// LowRankSet

LowRankSet::LowRankSet(std::size_t m, std::size_t n, std::size_t r) : m_(m), n_(n), r_(r) {
  if (r == 0 || r >= std::min(m, n)) {
    throw std::invalid_argument(fmt::format("rank bound must satisfy 0 < r < min(m, n) (m={}, n={}, r={})", m, n, r));
  }
}

std::string LowRankSet::spec() const { return fmt::format("lowrank:m={},n={},r={}", m_, n_, r_); }

Point LowRankSet::do_project(const Point& x) const {
  const auto f = full_svd(x.matrix());
  const auto r = static_cast<Index>(r_);
  return Point::from_matrix(f.u.leftCols(r) * f.sigma.head(r).asDiagonal() * f.v.leftCols(r).transpose());
}

Point LowRankSet::do_project_regular_normal(const Point& x, const Point& v) const {
  // rank r: {U_perp W V_perp^T};  rank < r: {0}
  const auto fx = low_rank_factors(x, r_);
  if (fx.k < static_cast<Index>(r_)) return Point::zeros(v.shape());
  const MatrixXd up = fx.u_perp();
  const MatrixXd vp = fx.v_perp();
  return Point::from_matrix(up * (up.transpose() * v.matrix() * vp) * vp.transpose());
}

Point LowRankSet::do_project_general_normal(const Point& x, const Point& v) const {
  // {U_perp W V_perp^T : rank W <= min(m, n) - r}
  const auto fx = low_rank_factors(x, r_);
  const MatrixXd up = fx.u_perp();
  const MatrixXd vp = fx.v_perp();
  const auto q = static_cast<Index>(std::min(m_, n_) - r_);
  return Point::from_matrix(up * truncate_rank(up.transpose() * v.matrix() * vp, q) * vp.transpose());
}

Point LowRankSet::do_project_tangent(const Point& x, const Point& v) const {
  // T(X) = {U A V^T + U B^T V_perp^T + U_perp C V^T + U_perp D V_perp^T : rank D <= r - k}
  const auto fx = low_rank_factors(x, r_);
  const MatrixXd up = fx.u_perp();
  const MatrixXd vp = fx.v_perp();
  const MatrixXd g = v.matrix();
  const MatrixXd w = up.transpose() * g * vp;
  const MatrixXd off_normal = g - up * w * vp.transpose();
  const Index budget = static_cast<Index>(r_) - fx.k;
  return Point::from_matrix(off_normal + up * truncate_rank(w, budget) * vp.transpose());
}

int LowRankSet::do_stratum_id(const Point& x) const { return static_cast<int>(low_rank_factors(x, r_).k); }

Point LowRankSet::do_snap_to_stratum(const Point& x, double radius) const {
  const Point p = do_project(x);
  const auto f = full_svd(p.matrix());
  double budget = radius * radius - distance(x, p) * distance(x, p);
  Index keep = numeric_rank(f.sigma, r_);
  while (keep > 0 && f.sigma[keep - 1] * f.sigma[keep - 1] <= budget) {
    budget -= f.sigma[keep - 1] * f.sigma[keep - 1];
    --keep;
  }
  return Point::from_matrix(f.u.leftCols(keep) * f.sigma.head(keep).asDiagonal() * f.v.leftCols(keep).transpose());
}

// ---------------------------------------------------------------------------
// PsdLowRankSet

PsdLowRankSet::PsdLowRankSet(std::size_t n, std::size_t r) : n_(n), r_(r) {
  if (r == 0 || r >= n) throw std::invalid_argument(fmt::format("rank bound must satisfy 0 < r < n (n={}, r={})", n, r));
}

std::string PsdLowRankSet::spec() const { return fmt::format("psd:n={},r={}", n_, r_); }

Point PsdLowRankSet::do_project(const Point& x) const {
  // P(X) = P(sym X): keep the r largest positive eigenvalues
  const SymEig e = sym_eig(sym(x.matrix()));
  VectorXd kept = VectorXd::Zero(e.lambda.size());
  for (Index i = 0; i < static_cast<Index>(r_); ++i) kept[i] = std::max(e.lambda[i], 0.0);
  // sym() makes the rounding in Q diag Q^T symmetric as well
  return Point::from_matrix(sym(e.q * kept.asDiagonal() * e.q.transpose()));
}

Point PsdLowRankSet::do_project_regular_normal(const Point& x, const Point& v) const {
  // skew matrices + {Z symmetric : XZ = 0}, with Z <= 0 required when rank X < r
  const auto fx = psd_factors(x, r_);
  const MatrixXd g = v.matrix();
  const MatrixXd up = fx.u_perp();
  MatrixXd d = up.transpose() * sym(g) * up;
  if (fx.k < static_cast<Index>(r_)) d = negative_part(d);
  return Point::from_matrix(skew(g) + up * d * up.transpose());
}

Point PsdLowRankSet::do_project_general_normal(const Point& x, const Point& v) const {
  // skew + {Z sym : XZ = 0, Z <= 0}  u  skew + {Z sym : XZ = 0, rank Z <= n - r}
  const auto fx = psd_factors(x, r_);
  const MatrixXd g = v.matrix();
  const MatrixXd up = fx.u_perp();
  const MatrixXd d = up.transpose() * sym(g) * up;
  const MatrixXd neg = negative_part(d);
  const MatrixXd low = truncate_sym_rank(d, static_cast<Index>(n_ - r_));
  const MatrixXd& best = (d - low).squaredNorm() < (d - neg).squaredNorm() ? low : neg;
  return Point::from_matrix(skew(g) + up * best * up.transpose());
}

Point PsdLowRankSet::do_project_tangent(const Point&, const Point&) const {
  throw UnsupportedOperation(spec() + ": tangent cone projection is not provided");
}

int PsdLowRankSet::do_stratum_id(const Point& x) const { return static_cast<int>(psd_factors(x, r_).k); }

Point PsdLowRankSet::do_snap_to_stratum(const Point& x, double radius) const {
  const Point p = do_project(x);
  const SymEig e = sym_eig(sym(p.matrix()));
  double budget = radius * radius - distance(x, p) * distance(x, p);
  Index keep = numeric_rank(e.lambda, r_);
  while (keep > 0 && e.lambda[keep - 1] * e.lambda[keep - 1] <= budget) {
    budget -= e.lambda[keep - 1] * e.lambda[keep - 1];
    --keep;
  }
  return Point::from_matrix(e.q.leftCols(keep) * e.lambda.head(keep).asDiagonal() * e.q.leftCols(keep).transpose());
}

}  // namespace ncpgd
