// Dense bivariate polynomials P(x, y) = sum_ij c_ij x^i y^j.
#pragma once

#include <algorithm>
#include <complex>
#include <stdexcept>

#include <Eigen/Core>

namespace nhll {

/// Coefficients are stored in a square matrix, coeffs(i, j) multiplying x^i y^j.
/// Entries with i + j above the degree bound are kept at zero.
template <typename Scalar>
class Polynomial2 {
 public:
  using CoeffMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Polynomial2() : coeffs_(CoeffMatrix::Zero(1, 1)) {}
  explicit Polynomial2(const Scalar& constant) : coeffs_(CoeffMatrix::Constant(1, 1, constant)) {}
  explicit Polynomial2(CoeffMatrix coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.rows() != coeffs_.cols() || coeffs_.rows() == 0) {
      throw std::invalid_argument("Polynomial2 coefficient matrix must be square and non-empty");
    }
  }

  const CoeffMatrix& coeffs() const { return coeffs_; }
  Scalar coeff(int i, int j) const {
    return (i < capacity() && j < capacity()) ? coeffs_(i, j) : Scalar(0);
  }

  /// Number of stored powers per variable (degree bound + 1).
  int capacity() const { return int(coeffs_.rows()); }

  /// Largest i + j with a nonzero coefficient; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (int i = 0; i < capacity(); ++i)
      for (int j = 0; j < capacity(); ++j)
        if (coeffs_(i, j) != Scalar(0)) d = std::max(d, i + j);
    return d;
  }

  Polynomial2 derivative_x() const {
    CoeffMatrix out = CoeffMatrix::Zero(capacity(), capacity());
    for (int i = 1; i < capacity(); ++i) out.row(i - 1) = Scalar(double(i)) * coeffs_.row(i);
    return Polynomial2(std::move(out));
  }

  Polynomial2 derivative_y() const {
    CoeffMatrix out = CoeffMatrix::Zero(capacity(), capacity());
    for (int j = 1; j < capacity(); ++j) out.col(j - 1) = Scalar(double(j)) * coeffs_.col(j);
    return Polynomial2(std::move(out));
  }

  /// x * P (capacity grows by one).
  Polynomial2 times_x() const {
    CoeffMatrix out = CoeffMatrix::Zero(capacity() + 1, capacity() + 1);
    out.block(1, 0, capacity(), capacity()) = coeffs_;
    return Polynomial2(std::move(out));
  }

  /// y * P (capacity grows by one).
  Polynomial2 times_y() const {
    CoeffMatrix out = CoeffMatrix::Zero(capacity() + 1, capacity() + 1);
    out.block(0, 1, capacity(), capacity()) = coeffs_;
    return Polynomial2(std::move(out));
  }

  Polynomial2& operator+=(const Polynomial2& other) {
    const int cap = std::max(capacity(), other.capacity());
    CoeffMatrix out = CoeffMatrix::Zero(cap, cap);
    out.topLeftCorner(capacity(), capacity()) = coeffs_;
    out.topLeftCorner(other.capacity(), other.capacity()) += other.coeffs_;
    coeffs_ = std::move(out);
    return *this;
  }

  Polynomial2& operator*=(const Scalar& s) {
    coeffs_ *= s;
    return *this;
  }

  friend Polynomial2 operator+(Polynomial2 a, const Polynomial2& b) { return a += b; }
  friend Polynomial2 operator-(Polynomial2 a, const Polynomial2& b) { return a += b * Scalar(-1); }
  friend Polynomial2 operator*(Polynomial2 a, const Scalar& s) { return a *= s; }
  friend Polynomial2 operator*(const Scalar& s, Polynomial2 a) { return a *= s; }

  /// Nested Horner evaluation; Real is the coordinate type.
  template <typename Real>
  Scalar operator()(Real x_in, Real y_in) const {
    using R = typename Eigen::NumTraits<Scalar>::Real;
    const R x = static_cast<R>(x_in);
    const R y = static_cast<R>(y_in);
    Scalar acc(0);
    for (int i = capacity() - 1; i >= 0; --i) {
      Scalar row(0);
      for (int j = capacity() - 1; j >= 0; --j) row = row * y + coeffs_(i, j);
      acc = acc * x + row;
    }
    return acc;
  }

 private:
  CoeffMatrix coeffs_;
};

}  // namespace nhll
