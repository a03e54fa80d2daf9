#pragma once

// Periodic stack of two alternating media. One cycle, starting in the second
// medium, is B(nu) P(beta1) B(-nu) P(beta2) acting on the (forward, backward)
// wave amplitudes. A fixed unitary similarity turns it into the real ABCD
// matrix S(nu) R(beta1) S(-nu) R(beta2), which is then split as
// R(xi1) B(-2 lambda) R(xi2) and handed to the exponential form.
//
// "lambda" here is the boost rapidity of the cycle, unrelated to the mean
// attenuation of the optical-activity model.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "errors.hpp"
#include "exp_form.hpp"
#include "mat2.hpp"
#include "sl2.hpp"

namespace wigner_abcd::multilayer {

using cdouble = std::complex<double>;

// Complex 2x2 matrix, row-major.
struct CMat2 {
  cdouble e11{1.0}, e12{0.0}, e21{0.0}, e22{1.0};

  static CMat2 identity() { return {}; }
  static CMat2 from_real(const Mat2& m) { return {m.e11(), m.e12(), m.e21(), m.e22()}; }

  cdouble det() const { return e11 * e22 - e12 * e21; }

  CMat2 inverse() const {
    const cdouble d = det();
    if (d == cdouble(0.0)) throw DomainError("CMat2::inverse: singular matrix");
    return {e22 / d, -e12 / d, -e21 / d, e11 / d};
  }

  double max_norm() const { return std::max({std::abs(e11), std::abs(e12), std::abs(e21), std::abs(e22)}); }
  double max_imag() const {
    return std::max({std::abs(e11.imag()), std::abs(e12.imag()), std::abs(e21.imag()), std::abs(e22.imag())});
  }

  friend CMat2 operator*(const CMat2& x, const CMat2& y) {
    return {x.e11 * y.e11 + x.e12 * y.e21, x.e11 * y.e12 + x.e12 * y.e22, x.e21 * y.e11 + x.e22 * y.e21,
            x.e21 * y.e12 + x.e22 * y.e22};
  }
};

/**
 * Parameters of one cycle. Build through from_transmission() or
 * from_rapidity(); both keep r12^2 + t12^2 = 1 and nu = 2 artanh(r12).
 */
struct LayerPair {
  double beta1 = 0.0;  // phase advance in medium 1, beta/2 = k d
  double beta2 = 0.0;
  double nu = 0.0;     // cosh(nu/2) = 1/t12, sinh(nu/2) = r12/t12
  double t12 = 1.0;
  double r12 = 0.0;

  static LayerPair from_transmission(double t12, double beta1, double beta2) {
    if (!(t12 > 0.0 && t12 <= 1.0)) throw ValidationError("LayerPair: t12 must lie in (0, 1]");
    if (!(std::isfinite(beta1) && std::isfinite(beta2))) throw ValidationError("LayerPair: non-finite phase");
    const double r12 = std::sqrt((1.0 - t12) * (1.0 + t12));
    if (r12 >= 1.0) throw ValidationError("LayerPair: t12 too small, boundary rapidity overflows");
    return {beta1, beta2, 2.0 * std::atanh(r12), t12, r12};
  }

  static LayerPair from_rapidity(double nu, double beta1, double beta2) {
    if (!(std::isfinite(nu) && std::isfinite(beta1) && std::isfinite(beta2))) {
      throw ValidationError("LayerPair: non-finite parameter");
    }
    return {beta1, beta2, nu, 1.0 / std::cosh(0.5 * nu), std::tanh(0.5 * nu)};
  }
};

// diag(e^{i beta/2}, e^{-i beta/2})
inline CMat2 phase_matrix(double beta) {
  return {std::polar(1.0, 0.5 * beta), 0.0, 0.0, std::polar(1.0, -0.5 * beta)};
}

// Interface matrix [[cosh(nu/2), sinh(nu/2)], [sinh(nu/2), cosh(nu/2)]].
inline UniMat2 boundary_matrix(double nu) { return boost(nu); }

/**
 * Unitary similarity that takes products of phase and boundary matrices to
 * real unimodular matrices: P(beta) -> rotation_half(beta), B(nu) -> squeeze(nu).
 * The top row carries e^{-i pi/4}; with e^{+i pi/4} there instead, phases
 * would map to rotation_half(-beta).
 */
inline CMat2 conjugator() {
  const double s = 1.0 / std::numbers::sqrt2;
  const cdouble w = std::polar(s, -std::numbers::pi / 4.0);
  return {w, w, -std::conj(w), std::conj(w)};
}

inline constexpr double kRealnessTol = 1e-12;

inline Mat2 conjugate_to_real(const CMat2& m) {
  const CMat2 c = conjugator();
  const CMat2 x = c * m * c.inverse();
  const double residue = x.max_imag();
  if (residue > kRealnessTol * std::max(1.0, x.max_norm())) {
    throw ConjugationError("conjugate_to_real: matrix is not in the admissible group");
  }
  return {x.e11.real(), x.e12.real(), x.e21.real(), x.e22.real()};
}

inline CMat2 complex_cycle(const LayerPair& lp) {
  return CMat2::from_real(boundary_matrix(lp.nu)) * phase_matrix(lp.beta1) *
         CMat2::from_real(boundary_matrix(-lp.nu)) * phase_matrix(lp.beta2);
}

// S(nu) R(beta1) S(-nu) R(beta2), computed directly in real arithmetic.
inline UniMat2 cycle(const LayerPair& lp) {
  return squeeze(lp.nu) * rotation_half(lp.beta1) * squeeze(-lp.nu) * rotation_half(lp.beta2);
}

struct CoreParams {
  double xi1 = 0.0;
  double boost_rapidity = 0.0;
};

/**
 * S(nu) R(beta1) S(-nu) = R(xi1) B(-2 lambda) R(xi1).
 *
 * The right side is [[ch cos xi1, -(ch sin xi1 + sh)], [ch sin xi1 - sh, ch cos xi1]]
 * with ch = cosh(lambda), sh = sinh(lambda), so lambda comes from the
 * symmetric off-diagonal part and xi1 from the antisymmetric part and the
 * diagonal. The left side is conjugate to a rotation, so this never
 * degenerates.
 */
inline CoreParams core_decompose(double nu, double beta1) {
  if (!(std::isfinite(nu) && std::isfinite(beta1))) throw ValidationError("core_decompose: non-finite input");
  const UniMat2 x = squeeze(nu) * rotation_half(beta1) * squeeze(-nu);
  const double sh = -0.5 * (x.e12() + x.e21());
  CoreParams p;
  p.boost_rapidity = std::asinh(sh);
  p.xi1 = std::atan2(0.5 * (x.e21() - x.e12()), 0.5 * (x.e11() + x.e22()));
  return p;
}

// Closed forms for the same split:
//   cosh(lambda) = cosh(nu) sqrt(1 - cos^2(beta1/2) tanh^2(nu))
//   cos(xi1)     = cos(beta1/2) / cosh(lambda)
inline double closed_form_cosh_lambda(double nu, double beta1) {
  const double cb = std::cos(0.5 * beta1);
  const double th = std::tanh(nu);
  return std::cosh(nu) * std::sqrt(1.0 - cb * cb * th * th);
}

inline double closed_form_cos_xi1(double nu, double beta1) {
  return std::cos(0.5 * beta1) / closed_form_cosh_lambda(nu, beta1);
}

struct CoreDecomp {
  double xi1 = 0.0;
  double xi2 = 0.0;
  double xi = 0.0;
  double alpha_ml = 0.0;
  double boost_rapidity = 0.0;

  // R(xi) B(-2 lambda) R(xi), the equi-diagonal core.
  UniMat2 core() const { return rotation_half(xi) * boost(-2.0 * boost_rapidity) * rotation_half(xi); }

  // R(xi1) B(-2 lambda) R(xi2), the full cycle.
  UniMat2 reconstruct() const {
    return rotation_half(xi1) * boost(-2.0 * boost_rapidity) * rotation_half(xi2);
  }

  EquiDiag equidiag() const {
    const double ch = std::cosh(boost_rapidity);
    const double sh = std::sinh(boost_rapidity);
    return {alpha_ml, ch * std::cos(xi), -(ch * std::sin(xi) + sh), ch * std::sin(xi) - sh};
  }
};

inline CoreDecomp full_decompose(const LayerPair& lp) {
  const CoreParams p = core_decompose(lp.nu, lp.beta1);
  CoreDecomp cd;
  cd.xi1 = p.xi1;
  cd.xi2 = p.xi1 + lp.beta2;
  cd.xi = 0.5 * (cd.xi1 + cd.xi2);
  cd.alpha_ml = 0.5 * (cd.xi1 - cd.xi2);
  cd.boost_rapidity = p.boost_rapidity;
  return cd;
}

// Within this distance of |cosh(lambda) cos(xi)| = 1 the core is treated as parabolic.
inline constexpr double kParabolicTraceTol = 1e-12;

/**
 * Exponent of the equi-diagonal core in terms of (xi, lambda):
 *
 *   tan(theta) = -tanh(lambda) / sin(xi)
 *   r = sqrt((sin^2 xi + tanh^2 lambda) / (sin^2 xi - tanh^2 lambda)) phi,  cos phi = cosh(lambda) cos(xi) < 1
 *   r = sqrt((sin^2 xi + tanh^2 lambda) / (tanh^2 lambda - sin^2 xi)) chi,  cosh chi = cosh(lambda) cos(xi) > 1
 *
 * The sign of tan(theta) is opposite to the one obtained with the generator
 * written as [[0, -(cos + sin)], [cos - sin, 0]]; here the generator is M(theta).
 */
inline ExpForm multilayer_branch(const CoreDecomp& cd) {
  const double ch = std::cosh(cd.boost_rapidity);
  const double sh = std::sinh(cd.boost_rapidity);
  const double th = std::tanh(cd.boost_rapidity);
  const double sx = std::sin(cd.xi);
  const double half_trace = ch * std::cos(cd.xi);

  if (std::abs(std::abs(half_trace) - 1.0) <= kParabolicTraceTol) return log_to_expform(cd.equidiag());

  ExpForm f;
  double theta = 0.0;
  double r = 0.0;
  const double sx2 = sx * sx;
  const double th2 = th * th;
  if (std::abs(half_trace) < 1.0) {
    const double phi = std::atan2(std::sqrt(std::max(0.0, ch * ch * sx2 - sh * sh)), half_trace);
    theta = std::atan2(-th, sx);
    r = std::sqrt((sx2 + th2) / (sx2 - th2)) * phi;
  } else {
    f.sign = half_trace < 0.0 ? -1 : 1;
    const double chi = std::asinh(std::sqrt(std::max(0.0, sh * sh - ch * ch * sx2)));
    theta = std::atan2(-f.sign * th, f.sign * sx);
    r = std::sqrt((sx2 + th2) / (th2 - sx2)) * chi;
  }
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

inline BranchKind cycle_branch(const LayerPair& lp, double rel_tol = kDefaultBranchTol) {
  const UniMat2 m = cycle(lp);
  return classify(equidiagonalize(m), rel_tol * m.max_norm());
}

// cycle(lp)^n through the exponential form of the core.
inline UniMat2 stack(const LayerPair& lp, long long n) {
  if (n < 0) throw ValidationError("stack: negative count");
  const CoreDecomp cd = full_decompose(lp);
  const EquiDiag ed = cd.equidiag();
  const double scale = std::max({std::abs(ed.a), std::abs(ed.b), std::abs(ed.c)});
  PeriodicForm pf;
  pf.alpha = cd.alpha_ml;
  if (classify(ed, kDefaultBranchTol * scale) == BranchKind::Scalar) {
    pf.scalar = true;
    pf.form.sign = ed.a < 0.0 ? -1 : 1;
  } else {
    pf.form = multilayer_branch(cd);
  }
  return pf.power(n);
}

}  // namespace wigner_abcd::multilayer
