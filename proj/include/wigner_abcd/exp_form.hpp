#pragma once

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "mat2.hpp"
#include "sl2.hpp"

namespace wigner_abcd {

inline constexpr double kQuarterPi = std::numbers::pi / 4.0;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Half-width of the window around |theta| = pi/4 where the truncated
/// (parabolic) closed form is used.
inline constexpr double kBoundaryWindow = 1e-12;

/// Largest |r| for which the Taylor oracle is trusted.
inline constexpr double kTaylorMaxRadius = 50.0;

/**
 * The equi-diagonal core written as sign * exp{r M(theta)}, with
 *
 *   M(theta) = [[0, -cos(theta) + sin(theta)], [cos(theta) + sin(theta), 0]].
 *
 * theta lives in (-pi/2, pi/2] so cos(theta) >= 0; the other half of the
 * circle is reached by flipping the sign of r.
 */
struct ExpForm {
  double r = 0.0;
  double theta = 0.0;
  int sign = 1;
};

// Traceless generator; M^2 = -cos(2 theta) I.
struct Generator {
  double theta = 0.0;
  Mat2 matrix;
};

inline void validate(const ExpForm& f) {
  if (!std::isfinite(f.r) || !std::isfinite(f.theta)) throw ValidationError("ExpForm: non-finite field");
  if (std::abs(f.theta) > kHalfPi) throw ValidationError("ExpForm: theta outside [-pi/2, pi/2]");
  if (f.sign != 1 && f.sign != -1) throw ValidationError("ExpForm: sign must be +1 or -1");
}

inline Generator m_of_theta(double theta) {
  if (!(std::abs(theta) <= kHalfPi)) throw DomainError("m_of_theta: theta outside [-pi/2, pi/2]");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {theta, Mat2(0.0, -c + s, c + s, 0.0)};
}

// Branch of exp{r M(theta)} for r != 0, keyed on theta alone.
inline BranchKind generator_branch(double theta) {
  const double d = std::abs(theta) - kQuarterPi;
  if (std::abs(d) <= kBoundaryWindow) return theta > 0 ? BranchKind::ParabolicLower : BranchKind::ParabolicUpper;
  return d < 0 ? BranchKind::Circular : BranchKind::Hyperbolic;
}

namespace detail {

// sin(x)/x and sinh(x)/x, finite at zero.
inline double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }
inline double sinhc(double x) { return std::abs(x) < 1e-8 ? 1.0 + x * x / 6.0 : std::sinh(x) / x; }

inline UniMat2 apply_sign(const Mat2& m, int sign) { return UniMat2::trusted(sign == 1 ? m : -m); }

}  // namespace detail

/**
 * Closed-form exp{r M(theta)}.
 *
 * Away from the boundary the result equals
 *   |theta| < pi/4:  [[cos phi, -e^{-eta} sin phi], [e^{eta} sin phi, cos phi]],  phi = r sqrt(cos 2theta)
 *   |theta| > pi/4:  [[cosh chi, e^{-eta} sinh chi], [e^{eta} sinh chi, cosh chi]], chi = r sqrt(-cos 2theta)
 * but it is evaluated as diag * I + r * (sin phi / phi) * M, which never forms
 * eta and so stays finite as theta approaches pi/4 where eta diverges.
 */
inline UniMat2 exp_closed(const ExpForm& f) {
  validate(f);
  const double r = f.r;
  if (std::abs(std::abs(f.theta) - kQuarterPi) <= kBoundaryWindow) {
    const double shear = r * std::numbers::sqrt2;
    const Mat2 tri = f.theta > 0 ? Mat2(1.0, 0.0, shear, 1.0) : Mat2(1.0, -shear, 0.0, 1.0);
    return detail::apply_sign(tri, f.sign);
  }
  const double c = std::cos(f.theta);
  const double s = std::sin(f.theta);
  const double upper = s - c;
  const double lower = c + s;
  const double cos2 = -upper * lower;  // cos(2 theta) from the same entries as M
  const double arg = r * std::sqrt(std::abs(cos2));
  double diag = 0.0;
  double scale = 0.0;
  if (cos2 > 0.0) {
    diag = std::cos(arg);
    scale = detail::sinc(arg);
  } else {
    if (std::abs(arg) > 700.0) throw RangeError("exp_closed: hyperbolic argument overflows");
    diag = std::cosh(arg);
    scale = detail::sinhc(arg);
  }
  return detail::apply_sign(Mat2(diag, r * scale * upper, r * scale * lower, diag), f.sign);
}

// Taylor series of exp{r G} by scaling and squaring. Independent of exp_closed.
inline UniMat2 exp_taylor(const Generator& g, double r) {
  if (!std::isfinite(r)) throw ValidationError("exp_taylor: non-finite r");
  if (std::abs(r) > kTaylorMaxRadius) throw RangeError("exp_taylor: |r| beyond the trusted range");
  int halvings = 0;
  if (r != 0.0) halvings = std::max(0, static_cast<int>(std::ceil(std::log2(std::abs(r)))) + 2);
  const Mat2 step = std::ldexp(r, -halvings) * g.matrix;

  Mat2 sum = Mat2::identity();
  Mat2 term = Mat2::identity();
  for (int k = 1; k <= 100; ++k) {
    term = (1.0 / k) * (term * step);
    sum = sum + term;
    if (term.max_norm() <= 1e-18 * sum.max_norm()) break;
  }
  for (int i = 0; i < halvings; ++i) sum = sum * sum;
  return UniMat2::trusted(sum);
}

/**
 * Inverse of exp_closed on an equi-diagonal core [[a, b], [c, a]]:
 *
 *   tan(theta) = (b + c) / (c - b),
 *   r = sqrt((b^2 + c^2) / (-2bc)) phi    (circular, cos phi = a)
 *   r = sqrt((b^2 + c^2) / (2bc)) chi     (hyperbolic, cosh chi = a)
 *
 * Parabolic cores map to theta = +-pi/4. Scalar cores (r = 0 for every
 * theta) are rejected. rel_tol sets the parabolic window relative to the
 * largest entry.
 */
inline ExpForm log_to_expform(const EquiDiag& ed, double rel_tol = kDefaultBranchTol) {
  const double scale = std::max({std::abs(ed.a), std::abs(ed.b), std::abs(ed.c)});
  const BranchKind kind = classify(ed, rel_tol * scale);
  if (kind == BranchKind::Scalar) throw DomainError("log_to_expform: scalar matrix has no unique exponent");

  double a = ed.a;
  double b = ed.b;
  double c = ed.c;
  ExpForm f;
  if (a < 0.0 && kind != BranchKind::Circular) {
    f.sign = -1;
    a = -a;
    b = -b;
    c = -c;
  }

  double theta = 0.0;
  double r = 0.0;
  switch (kind) {
    case BranchKind::Circular: {
      const double phi = std::atan2(std::sqrt(-b * c), a);
      theta = std::atan2(b + c, c - b);
      r = std::sqrt((b * b + c * c) / (-2.0 * b * c)) * phi;
      break;
    }
    case BranchKind::Hyperbolic: {
      const double chi = std::asinh(std::sqrt(b * c));
      theta = std::atan2(b + c, c - b);
      r = std::sqrt((b * b + c * c) / (2.0 * b * c)) * chi;
      break;
    }
    case BranchKind::ParabolicLower:
      theta = kQuarterPi;
      r = c / std::numbers::sqrt2;
      break;
    case BranchKind::ParabolicUpper:
      theta = -kQuarterPi;
      r = -b / std::numbers::sqrt2;
      break;
    case BranchKind::Scalar:
      break;
  }
  // M(theta + pi) = -M(theta): fold into cos(theta) >= 0 by flipping r.
  if (theta > kHalfPi) {
    theta -= std::numbers::pi;
    r = -r;
  } else if (theta <= -kHalfPi) {
    theta += std::numbers::pi;
    r = -r;
  }
  f.r = r;
  f.theta = theta;
  return f;
}

// exp{n r M(theta)} in O(1); n >= 0.
inline UniMat2 n_cycle(const ExpForm& f, long long n) {
  if (n < 0) throw ValidationError("n_cycle: negative count");
  const int sign = (f.sign == -1 && (n % 2 == 1)) ? -1 : 1;
  return exp_closed({static_cast<double>(n) * f.r, f.theta, sign});
}

/**
 * Second-order Taylor form of exp{r M(theta)} near theta = +-pi/4, with
 * cos(theta) frozen at 1/sqrt(2). Valid only within 0.05 rad of the boundary.
 */
inline Mat2 boundary_expansion(double r, double theta) {
  constexpr double kNeighborhood = 0.05;
  const double t = std::tan(theta);
  const double sq2 = std::numbers::sqrt2;
  if (std::abs(theta - kQuarterPi) <= kNeighborhood) {
    const double diag = 1.0 - r * r * (1.0 - t) / 2.0;
    return {diag, -r * (1.0 - t) / sq2, r * sq2, diag};
  }
  if (std::abs(theta + kQuarterPi) <= kNeighborhood) {
    const double diag = 1.0 - r * r * (1.0 + t) / 2.0;
    return {diag, -r * sq2, r * (1.0 + t) / sq2, diag};
  }
  throw DomainError("boundary_expansion: theta not near +-pi/4");
}

/**
 * A unimodular matrix as R(alpha) * sign * exp{r M(theta)} * R(-alpha).
 * Powers cost the same as a single evaluation.
 */
struct PeriodicForm {
  double alpha = 0.0;
  ExpForm form;
  bool scalar = false;  // +-identity: no exponent, power is sign^n I

  UniMat2 power(long long n) const {
    if (n < 0) throw ValidationError("PeriodicForm::power: negative count");
    if (scalar) {
      const bool flip = form.sign == -1 && (n % 2 == 1);
      return flip ? -UniMat2::identity() : UniMat2::identity();
    }
    return rotation_half(alpha) * n_cycle(form, n) * rotation_half(-alpha);
  }
};

inline PeriodicForm periodic_form(const UniMat2& m, double rel_tol = kDefaultBranchTol) {
  const EquiDiag ed = equidiagonalize(m);
  PeriodicForm p;
  p.alpha = ed.alpha;
  const double scale = std::max({std::abs(ed.a), std::abs(ed.b), std::abs(ed.c)});
  if (classify(ed, rel_tol * scale) == BranchKind::Scalar) {
    p.scalar = true;
    p.form.sign = ed.a < 0.0 ? -1 : 1;
    return p;
  }
  p.form = log_to_expform(ed, rel_tol);
  return p;
}

// m^n through the exponential form.
inline UniMat2 analytic_power(const UniMat2& m, long long n, double rel_tol = kDefaultBranchTol) {
  return periodic_form(m, rel_tol).power(n);
}

}  // namespace wigner_abcd
