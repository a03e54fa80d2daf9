#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "errors.hpp"

namespace wigner_abcd {

/// Tolerance on |det - 1| accepted when a matrix enters the API as unimodular.
inline constexpr double kUnimodularTol = 1e-9;

/**
 * Real 2x2 matrix, row-major:
 *
 *     [ e11  e12 ]     [ A  B ]
 *     [ e21  e22 ]  =  [ C  D ]
 *
 * Entries are always finite; the constructor rejects NaN and Inf.
 */
class Mat2 {
 public:
  constexpr Mat2() = default;

  Mat2(double e11, double e12, double e21, double e22) : e11_(e11), e12_(e12), e21_(e21), e22_(e22) {
    if (!(std::isfinite(e11) && std::isfinite(e12) && std::isfinite(e21) && std::isfinite(e22))) {
      throw ValidationError("Mat2: non-finite entry");
    }
  }

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }

  double e11() const { return e11_; }
  double e12() const { return e12_; }
  double e21() const { return e21_; }
  double e22() const { return e22_; }

  double det() const { return e11_ * e22_ - e12_ * e21_; }
  double trace() const { return e11_ + e22_; }
  double max_norm() const {
    return std::max({std::abs(e11_), std::abs(e12_), std::abs(e21_), std::abs(e22_)});
  }

  Mat2 transpose() const { return {e11_, e21_, e12_, e22_}; }

  // Inverse of a matrix with nonzero determinant.
  Mat2 inverse() const {
    const double d = det();
    if (d == 0.0) throw DomainError("Mat2::inverse: singular matrix");
    return {e22_ / d, -e12_ / d, -e21_ / d, e11_ / d};
  }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.e11_ * y.e11_ + x.e12_ * y.e21_, x.e11_ * y.e12_ + x.e12_ * y.e22_,
            x.e21_ * y.e11_ + x.e22_ * y.e21_, x.e21_ * y.e12_ + x.e22_ * y.e22_};
  }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.e11_ + y.e11_, x.e12_ + y.e12_, x.e21_ + y.e21_, x.e22_ + y.e22_};
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.e11_ - y.e11_, x.e12_ - y.e12_, x.e21_ - y.e21_, x.e22_ - y.e22_};
  }
  friend Mat2 operator*(double s, const Mat2& x) { return {s * x.e11_, s * x.e12_, s * x.e21_, s * x.e22_}; }
  friend Mat2 operator-(const Mat2& x) { return {-x.e11_, -x.e12_, -x.e21_, -x.e22_}; }

  friend bool operator==(const Mat2&, const Mat2&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    return os << "[[" << m.e11_ << ", " << m.e12_ << "], [" << m.e21_ << ", " << m.e22_ << "]]";
  }

 private:
  double e11_ = 0.0;
  double e12_ = 0.0;
  double e21_ = 0.0;
  double e22_ = 0.0;
};

inline double max_abs_diff(const Mat2& x, const Mat2& y) { return (x - y).max_norm(); }

/**
 * Real 2x2 matrix with unit determinant (an ABCD matrix, element of SL(2,R)).
 *
 * The determinant is checked once, when a matrix is promoted from Mat2.
 * Products of UniMat2 stay in the group and skip the check; accumulated
 * rounding in long products is the caller's concern.
 */
class UniMat2 {
 public:
  UniMat2() : m_(Mat2::identity()) {}

  explicit UniMat2(const Mat2& m, double tol = kUnimodularTol) : m_(m) {
    if (!(std::abs(m.det() - 1.0) <= tol)) {
      throw ValidationError("UniMat2: determinant " + std::to_string(m.det()) + " is not one");
    }
  }

  UniMat2(double e11, double e12, double e21, double e22) : UniMat2(Mat2(e11, e12, e21, e22)) {}

  // Wraps a matrix known to be unimodular by construction.
  static UniMat2 trusted(const Mat2& m) {
    UniMat2 u;
    u.m_ = m;
    return u;
  }

  static UniMat2 identity() { return {}; }

  const Mat2& mat() const { return m_; }
  operator const Mat2&() const { return m_; }  // NOLINT(google-explicit-constructor)

  double e11() const { return m_.e11(); }
  double e12() const { return m_.e12(); }
  double e21() const { return m_.e21(); }
  double e22() const { return m_.e22(); }
  double det() const { return m_.det(); }
  double trace() const { return m_.trace(); }
  double max_norm() const { return m_.max_norm(); }

  // For det = 1 the inverse needs no division.
  UniMat2 inverse() const { return trusted({m_.e22(), -m_.e12(), -m_.e21(), m_.e11()}); }
  UniMat2 transpose() const { return trusted(m_.transpose()); }

  friend UniMat2 operator*(const UniMat2& x, const UniMat2& y) { return trusted(x.m_ * y.m_); }
  friend UniMat2 operator-(const UniMat2& x) { return trusted(-x.m_); }
  friend bool operator==(const UniMat2& x, const UniMat2& y) { return x.m_ == y.m_; }

  friend std::ostream& operator<<(std::ostream& os, const UniMat2& m) { return os << m.m_; }

 private:
  Mat2 m_;
};

// Repeated multiplication, one factor at a time. Reference route for powers.
inline UniMat2 power_by_multiplication(const UniMat2& m, long long n) {
  if (n < 0) throw ValidationError("power_by_multiplication: negative exponent");
  Mat2 acc = Mat2::identity();
  for (long long k = 0; k < n; ++k) acc = acc * m.mat();
  return UniMat2::trusted(acc);
}

}  // namespace wigner_abcd
