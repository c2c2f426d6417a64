#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "ncpgd/sets.hpp"

namespace ncpgd {

namespace {

// Indices sorted by decreasing key; equal keys keep increasing index order.
std::vector<Eigen::Index> order_by_decreasing(const Eigen::VectorXd& key) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(key.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) { return key[a] > key[b]; });
  return idx;
}

// Keeps the `keep` entries of `w` with largest |w| among those where
// `eligible` is true and zeroes every other eligible entry. Ineligible
// entries are left untouched.
void keep_largest(Eigen::VectorXd& w, const std::vector<bool>& eligible, std::size_t keep) {
  Eigen::VectorXd key = w.cwiseAbs();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!eligible[static_cast<std::size_t>(i)]) key[i] = -1.0;
  }
  std::size_t kept = 0;
  for (Eigen::Index i : order_by_decreasing(key)) {
    if (!eligible[static_cast<std::size_t>(i)]) continue;
    if (kept < keep) {
      ++kept;
    } else {
      w[i] = 0.0;
    }
  }
}

std::vector<bool> support_of(const Point& p) {
  std::vector<bool> s(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) s[i] = p[i] != 0.0;
  return s;
}

std::size_t count(const std::vector<bool>& flags) {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
}

std::vector<bool> negate(const std::vector<bool>& flags) {
  std::vector<bool> out(flags.size());
  for (std::size_t i = 0; i < flags.size(); ++i) out[i] = !flags[i];
  return out;
}

// Drops the smallest nonzero entries of the projection p of x as long as the
// total distance from x stays within radius.
Point snap_entries(const Point& x, const Point& p, double radius) {
  Eigen::VectorXd w = p.vec();
  double budget = radius * radius - (x.vec() - w).squaredNorm();
  Eigen::VectorXd key = -w.cwiseAbs();
  for (Eigen::Index i : order_by_decreasing(key)) {
    if (w[i] == 0.0) continue;
    const double cost = w[i] * w[i];
    if (cost > budget) break;
    budget -= cost;
    w[i] = 0.0;
  }
  return Point(p.shape(), w);
}

void check_sparsity(std::size_t n, std::size_t s) {
  if (s == 0 || s >= n) throw std::invalid_argument(fmt::format("sparsity level must satisfy 0 < s < n (n={}, s={})", n, s));
}

}  // namespace

// ---------------------------------------------------------------------------
// SparseSet

SparseSet::SparseSet(std::size_t n, std::size_t s) : n_(n), s_(s) { check_sparsity(n, s); }

std::string SparseSet::spec() const { return fmt::format("sparse:n={},s={}", n_, s_); }

Point SparseSet::do_project(const Point& x) const {
  Eigen::VectorXd w = x.vec();
  keep_largest(w, std::vector<bool>(n_, true), s_);
  return Point(x.shape(), w);
}

Point SparseSet::do_project_regular_normal(const Point& x, const Point& v) const {
  const auto supp = support_of(do_project(x));
  if (count(supp) < s_) return Point::zeros(v.shape());
  Eigen::VectorXd w = v.vec();
  for (std::size_t i = 0; i < n_; ++i) {
    if (supp[i]) w[static_cast<Eigen::Index>(i)] = 0.0;
  }
  return Point(v.shape(), w);
}

Point SparseSet::do_project_general_normal(const Point& x, const Point& v) const {
  // N(x) = {w : w_I = 0, |supp w| <= n - s}
  const auto supp = support_of(do_project(x));
  Eigen::VectorXd w = v.vec();
  for (std::size_t i = 0; i < n_; ++i) {
    if (supp[i]) w[static_cast<Eigen::Index>(i)] = 0.0;
  }
  keep_largest(w, negate(supp), n_ - s_);
  return Point(v.shape(), w);
}

Point SparseSet::do_project_tangent(const Point& x, const Point& v) const {
  // T(x) = {w : |supp(w) \ I| <= s - |I|}
  const auto supp = support_of(do_project(x));
  Eigen::VectorXd w = v.vec();
  keep_largest(w, negate(supp), s_ - count(supp));
  return Point(v.shape(), w);
}

int SparseSet::do_stratum_id(const Point& x) const { return static_cast<int>(count(support_of(do_project(x)))); }

Point SparseSet::do_snap_to_stratum(const Point& x, double radius) const {
  return snap_entries(x, do_project(x), radius);
}

// ---------------------------------------------------------------------------
// NonnegSparseSet

NonnegSparseSet::NonnegSparseSet(std::size_t n, std::size_t s) : n_(n), s_(s) { check_sparsity(n, s); }

std::string NonnegSparseSet::spec() const { return fmt::format("nonneg-sparse:n={},s={}", n_, s_); }

Point NonnegSparseSet::do_project(const Point& x) const {
  Eigen::VectorXd w = x.vec().cwiseMax(0.0);
  keep_largest(w, std::vector<bool>(n_, true), s_);
  return Point(x.shape(), w);
}

Point NonnegSparseSet::do_project_regular_normal(const Point& x, const Point& v) const {
  // |I| = s: {w : w_I = 0};  |I| < s: {w <= 0 : w_I = 0}
  const auto supp = support_of(do_project(x));
  const bool full = count(supp) == s_;
  Eigen::VectorXd w = v.vec();
  for (std::size_t i = 0; i < n_; ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    if (supp[i]) {
      w[j] = 0.0;
    } else if (!full) {
      w[j] = std::min(w[j], 0.0);
    }
  }
  return Point(v.shape(), w);
}

Point NonnegSparseSet::do_project_general_normal(const Point& x, const Point& v) const {
  // N(x) = {w <= 0 : w_I = 0} u {w : w_I = 0, |supp w| <= n - s}
  const auto supp = support_of(do_project(x));
  Eigen::VectorXd nonpos = v.vec();
  Eigen::VectorXd sparse = v.vec();
  for (std::size_t i = 0; i < n_; ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    if (supp[i]) {
      nonpos[j] = 0.0;
      sparse[j] = 0.0;
    } else {
      nonpos[j] = std::min(nonpos[j], 0.0);
    }
  }
  keep_largest(sparse, negate(supp), n_ - s_);
  const bool use_sparse = (v.vec() - sparse).squaredNorm() < (v.vec() - nonpos).squaredNorm();
  return Point(v.shape(), use_sparse ? sparse : nonpos);
}

Point NonnegSparseSet::do_project_tangent(const Point& x, const Point& v) const {
  // T(x) = {w : w_{I^c} in R^{n-|I|}_{<= s-|I|} n R_+}
  const auto supp = support_of(do_project(x));
  Eigen::VectorXd w = v.vec();
  for (std::size_t i = 0; i < n_; ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    if (!supp[i]) w[j] = std::max(w[j], 0.0);
  }
  keep_largest(w, negate(supp), s_ - count(supp));
  return Point(v.shape(), w);
}

int NonnegSparseSet::do_stratum_id(const Point& x) const {
  return static_cast<int>(count(support_of(do_project(x))));
}

Point NonnegSparseSet::do_snap_to_stratum(const Point& x, double radius) const {
  return snap_entries(x, do_project(x), radius);
}

}  // namespace ncpgd
