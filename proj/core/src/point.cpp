#include "ncpgd/point.hpp"

#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "ncpgd/errors.hpp"

namespace ncpgd {

std::string Shape::to_string() const {
  return matrix_ ? fmt::format("{}x{}", rows_, cols_) : fmt::format("{}", rows_);
}

Point::Point(Shape shape, Eigen::VectorXd data) : shape_(shape), data_(std::move(data)) {
  if (static_cast<std::size_t>(data_.size()) != shape_.size()) {
    throw ShapeError(fmt::format("point of shape {} needs {} coordinates, got {}", shape_.to_string(),
                                 shape_.size(), data_.size()));
  }
  if (!data_.allFinite()) throw NonFiniteError("point has a non-finite coordinate");
}

Point::Point(Shape shape, const std::vector<double>& data)
    : Point(shape, Eigen::Map<const Eigen::VectorXd>(data.data(), static_cast<Eigen::Index>(data.size()))) {}

Point Point::zeros(Shape shape) {
  return Point(shape, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(shape.size())));
}

Point Point::of(std::initializer_list<double> coords) {
  return Point(Shape::vector(coords.size()), std::vector<double>(coords));
}

Point Point::from_matrix(const Eigen::MatrixXd& m) {
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMajor rm = m;
  return Point(Shape::matrix(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())),
               Eigen::Map<const Eigen::VectorXd>(rm.data(), rm.size()));
}

Eigen::MatrixXd Point::matrix() const {
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  return Eigen::Map<const RowMajor>(data_.data(), static_cast<Eigen::Index>(shape_.rows()),
                                    static_cast<Eigen::Index>(shape_.cols()));
}

void require_same_shape(const Point& a, const Point& b) {
  if (a.shape() != b.shape()) {
    throw ShapeError(fmt::format("shape mismatch: {} vs {}", a.shape().to_string(), b.shape().to_string()));
  }
}

Point& Point::operator+=(const Point& other) {
  require_same_shape(*this, other);
  data_ += other.data_;
  if (!data_.allFinite()) throw NonFiniteError("overflow in point addition");
  return *this;
}

Point& Point::operator-=(const Point& other) {
  require_same_shape(*this, other);
  data_ -= other.data_;
  if (!data_.allFinite()) throw NonFiniteError("overflow in point subtraction");
  return *this;
}

Point& Point::operator*=(double s) {
  data_ *= s;
  if (!data_.allFinite()) throw NonFiniteError("non-finite scaling of a point");
  return *this;
}

Point operator+(Point a, const Point& b) { return a += b; }
Point operator-(Point a, const Point& b) { return a -= b; }
Point operator-(Point a) { return a *= -1.0; }
Point operator*(double s, Point a) { return a *= s; }
Point operator*(Point a, double s) { return a *= s; }

double inner(const Point& a, const Point& b) {
  require_same_shape(a, b);
  return a.vec().dot(b.vec());
}

double norm(const Point& a) { return a.vec().norm(); }

double distance(const Point& a, const Point& b) {
  require_same_shape(a, b);
  return (a.vec() - b.vec()).norm();
}

}  // namespace ncpgd
