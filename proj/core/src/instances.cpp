#include "ncpgd/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ncpgd/errors.hpp"

namespace ncpgd {

Point InstanceGenerator::ambient(const Shape& shape, double scale) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(shape.size()));
  for (auto& c : d) c = scale * gaussian();
  return Point(shape, std::move(d));
}

Point InstanceGenerator::feasible(const FeasibleSet& set, int stratum) {
  const int top = set.top_stratum();
  if (stratum > top) throw std::invalid_argument("InstanceGenerator::feasible: stratum out of range");
  const int k = stratum < 0 ? static_cast<int>(index(static_cast<std::size_t>(top) + 1)) : stratum;
  const Shape shape = set.ambient_shape();

  const bool nonneg = dynamic_cast<const NonnegSparseSet*>(&set) != nullptr;
  if (nonneg || dynamic_cast<const SparseSet*>(&set)) {
    std::vector<std::size_t> idx(shape.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng_);
    Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(shape.size()));
    for (int j = 0; j < k; ++j) {
      // Magnitudes bounded away from zero keep the support well defined.
      double v = (0.2 + std::abs(gaussian())) * (uniform(0, 1) < 0.5 ? -1.0 : 1.0);
      if (nonneg) v = std::abs(v);
      d[static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)])] = v;
    }
    return Point(shape, std::move(d));
  }
  if (dynamic_cast<const LowRankSet*>(&set)) {
    const auto m = static_cast<Eigen::Index>(shape.rows());
    const auto n = static_cast<Eigen::Index>(shape.cols());
    Eigen::MatrixXd a(m, k), b(k, n);
    for (auto& c : a.reshaped()) c = gaussian();
    for (auto& c : b.reshaped()) c = gaussian();
    return Point::from_matrix(a * b);
  }
  if (dynamic_cast<const PsdLowRankSet*>(&set)) {
    const auto n = static_cast<Eigen::Index>(shape.rows());
    Eigen::MatrixXd y(n, k);
    for (auto& c : y.reshaped()) c = gaussian();
    Eigen::MatrixXd x = y * y.transpose();
    x = 0.5 * (x + x.transpose()).eval();
    return Point::from_matrix(x);
  }
  const bool epigraph = dynamic_cast<const EpigraphSet*>(&set) != nullptr;
  if (epigraph || dynamic_cast<const CurveSet*>(&set)) {
    if (k == 0) return Point::zeros(shape);
    const double t = uniform(-2.0, 2.0);
    if (t == 0.0) return Point::zeros(shape);
    const double boundary = t > 0 ? std::pow(t, 0.6) : 0.0;
    if (k == 1) return Point::of({t, boundary});
    return Point::of({t, boundary + 0.05 + std::abs(gaussian())});
  }
  throw UnsupportedOperation(set.spec() + ": no random feasible points for this set");
}

}  // namespace ncpgd
