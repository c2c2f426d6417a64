#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace ncpgd {

/// Shape of an ambient space: either R^n or R^{m x n}.
class Shape {
 public:
  static Shape vector(std::size_t n) { return Shape(n, 1, false); }
  static Shape matrix(std::size_t m, std::size_t n) { return Shape(m, n, true); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return rows_ * cols_; }
  bool is_matrix() const noexcept { return matrix_; }

  std::string to_string() const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  Shape(std::size_t rows, std::size_t cols, bool matrix) : rows_(rows), cols_(cols), matrix_(matrix) {}

  std::size_t rows_;
  std::size_t cols_;
  bool matrix_;
};

/// An element of the ambient Euclidean space. Matrices are stored flat in
/// row-major order and use the Frobenius inner product, so vector and matrix
/// sets share one point type. Coordinates are always finite.
class Point {
 public:
  /// Throws ShapeError if the coordinate count does not match the shape and
  /// NonFiniteError if any coordinate is NaN or infinite.
  Point(Shape shape, Eigen::VectorXd data);
  Point(Shape shape, const std::vector<double>& data);

  static Point zeros(Shape shape);
  static Point of(std::initializer_list<double> coords);
  /// Row-major copy of a dense matrix.
  static Point from_matrix(const Eigen::MatrixXd& m);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(data_.size()); }
  double operator[](std::size_t i) const { return data_[static_cast<Eigen::Index>(i)]; }

  const Eigen::VectorXd& vec() const noexcept { return data_; }
  std::vector<double> to_vector() const { return {data_.data(), data_.data() + data_.size()}; }
  /// Dense matrix view of the coordinates (for a vector shape, an n x 1 column).
  Eigen::MatrixXd matrix() const;

  Point& operator+=(const Point& other);
  Point& operator-=(const Point& other);
  Point& operator*=(double s);

 private:
  Shape shape_;
  Eigen::VectorXd data_;
};

Point operator+(Point a, const Point& b);
Point operator-(Point a, const Point& b);
Point operator-(Point a);
Point operator*(double s, Point a);
Point operator*(Point a, double s);

/// Throws ShapeError unless both shapes are identical.
void require_same_shape(const Point& a, const Point& b);

double inner(const Point& a, const Point& b);
double norm(const Point& a);
double distance(const Point& a, const Point& b);

}  // namespace ncpgd
