#pragma once

#include <cmath>
#include <string_view>

#include "errors.hpp"
#include "mat2.hpp"

namespace wigner_abcd {

/// Default branch tolerance, relative to the max-norm of the decomposed matrix.
inline constexpr double kDefaultBranchTol = 1e-9;

/// Largest |argument| accepted by squeeze() and boost() before exp() overflows.
inline constexpr double kMaxHyperbolicArg = 1400.0;

// Rotation with half-angle entries: cos(alpha/2), sin(alpha/2).
inline UniMat2 rotation_half(double alpha) {
  const double c = std::cos(0.5 * alpha);
  const double s = std::sin(0.5 * alpha);
  return UniMat2::trusted({c, -s, s, c});
}

// Rotation with full-angle entries, cos(angle) and sin(angle). Used for
// optical activity; do not mix with rotation_half.
inline UniMat2 rotation_full(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return UniMat2::trusted({c, -s, s, c});
}

// diag(e^{eta/2}, e^{-eta/2})
inline UniMat2 squeeze(double eta) {
  if (!(std::abs(eta) <= kMaxHyperbolicArg)) throw RangeError("squeeze: |eta| too large");
  return UniMat2::trusted(Mat2::diag(std::exp(0.5 * eta), std::exp(-0.5 * eta)));
}

// [[cosh(lambda/2), sinh(lambda/2)], [sinh(lambda/2), cosh(lambda/2)]]
inline UniMat2 boost(double lambda) {
  if (!(std::abs(lambda) <= kMaxHyperbolicArg)) throw RangeError("boost: |lambda| too large");
  const double ch = std::cosh(0.5 * lambda);
  const double sh = std::sinh(0.5 * lambda);
  return UniMat2::trusted({ch, sh, sh, ch});
}

/**
 * A unimodular matrix written as R(alpha) [[a, b], [c, a]] R(-alpha),
 * with R the half-angle rotation.
 *
 * Produced by equidiagonalize() with b + c >= 0; a^2 - bc = 1 up to rounding.
 */
struct EquiDiag {
  double alpha = 0.0;
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;

  // The equi-diagonal core [[a, b], [c, a]].
  UniMat2 core() const { return UniMat2::trusted({a, b, c, a}); }

  UniMat2 reconstruct() const { return rotation_half(alpha) * core() * rotation_half(-alpha); }
};

inline EquiDiag equidiagonalize(const UniMat2& m) {
  const double A = m.e11();
  const double B = m.e12();
  const double C = m.e21();
  const double D = m.e22();
  const double h = std::hypot(A - D, B + C);
  EquiDiag ed;
  // atan2(0, 0) = 0 covers matrices that are already equi-diagonal with b = -c.
  ed.alpha = std::atan2(D - A, B + C);
  ed.a = 0.5 * (A + D);
  ed.b = 0.5 * ((B - C) + h);
  ed.c = 0.5 * ((C - B) + h);
  return ed;
}

enum class BranchKind { Circular, Hyperbolic, ParabolicLower, ParabolicUpper, Scalar };

constexpr std::string_view to_string(BranchKind k) {
  switch (k) {
    case BranchKind::Circular: return "Circular";
    case BranchKind::Hyperbolic: return "Hyperbolic";
    case BranchKind::ParabolicLower: return "ParabolicLower";
    case BranchKind::ParabolicUpper: return "ParabolicUpper";
    case BranchKind::Scalar: return "Scalar";
  }
  return "?";
}

constexpr bool is_parabolic(BranchKind k) {
  return k == BranchKind::ParabolicLower || k == BranchKind::ParabolicUpper;
}

// Branch of the equi-diagonal core; tol is absolute, on the entries b and c.
inline BranchKind classify(const EquiDiag& ed, double tol) {
  if (!(tol > 0.0)) throw ValidationError("classify: tolerance must be positive");
  const double bc = ed.b * ed.c;
  const double tol2 = tol * tol;
  if (bc < -tol2) return BranchKind::Circular;
  if (bc > tol2) return BranchKind::Hyperbolic;
  const bool b_zero = std::abs(ed.b) <= tol;
  const bool c_zero = std::abs(ed.c) <= tol;
  if (b_zero && c_zero) return BranchKind::Scalar;
  // |bc| <= tol^2 forces at least one of b, c under tol.
  return b_zero ? BranchKind::ParabolicLower : BranchKind::ParabolicUpper;
}

/**
 * sign * R(alpha) D(eta) W(param) D(-eta) R(-alpha), with
 * D(eta) = diag(e^{-eta/2}, e^{eta/2}) and W one of
 *
 *   Circular        [[cos p, -sin p], [sin p, cos p]]
 *   Hyperbolic      [[cosh p, sinh p], [sinh p, cosh p]]
 *   ParabolicUpper  [[1, -p], [0, 1]]
 *   ParabolicLower  [[1, 0], [p, 1]]
 *   Scalar          identity
 *
 * For the circular and hyperbolic branches param carries the sign of the
 * core's lower-left entry c. Parabolic and scalar branches store eta = 0.
 */
struct WignerDecomp {
  BranchKind branch = BranchKind::Scalar;
  double param = 0.0;
  double eta = 0.0;
  double alpha = 0.0;
  int sign = 1;
};

inline UniMat2 wigner_matrix(BranchKind kind, double param) {
  switch (kind) {
    case BranchKind::Circular: return rotation_half(2.0 * param);
    case BranchKind::Hyperbolic: return boost(2.0 * param);
    case BranchKind::ParabolicUpper: return UniMat2::trusted({1.0, -param, 0.0, 1.0});
    case BranchKind::ParabolicLower: return UniMat2::trusted({1.0, 0.0, param, 1.0});
    case BranchKind::Scalar: return UniMat2::identity();
  }
  throw ConsistencyError("wigner_matrix: unknown branch");
}

inline UniMat2 reconstruct(const WignerDecomp& wd) {
  if (wd.sign != 1 && wd.sign != -1) throw ValidationError("reconstruct: sign must be +1 or -1");
  // D(eta) is squeeze(-eta) in the squeeze() convention.
  const UniMat2 inner = squeeze(-wd.eta) * wigner_matrix(wd.branch, wd.param) * squeeze(wd.eta);
  const UniMat2 out = rotation_half(wd.alpha) * inner * rotation_half(-wd.alpha);
  return wd.sign == 1 ? out : -out;
}

inline WignerDecomp wigner_decompose(const UniMat2& m, double rel_tol = kDefaultBranchTol) {
  const double tol = rel_tol * m.max_norm();
  EquiDiag ed = equidiagonalize(m);
  BranchKind kind = classify(ed, tol);

  WignerDecomp wd;
  // Negative trace outside the circular branch: factor out -1 and decompose -m.
  if (ed.a < 0.0 && kind != BranchKind::Circular) {
    wd.sign = -1;
    ed = equidiagonalize(-m);
    kind = classify(ed, tol);
  }
  wd.branch = kind;
  wd.alpha = ed.alpha;

  switch (kind) {
    case BranchKind::Circular:
      wd.param = std::copysign(std::atan2(std::sqrt(-ed.b * ed.c), ed.a), ed.c);
      wd.eta = 0.5 * std::log(-ed.c / ed.b);
      break;
    case BranchKind::Hyperbolic:
      // asinh(sqrt(bc)) rather than acosh(a): stays accurate as a -> 1.
      wd.param = std::copysign(std::asinh(std::sqrt(ed.b * ed.c)), ed.c);
      wd.eta = 0.5 * std::log(ed.c / ed.b);
      break;
    case BranchKind::ParabolicLower:
      wd.param = ed.c;
      break;
    case BranchKind::ParabolicUpper:
      wd.param = -ed.b;
      break;
    case BranchKind::Scalar:
      if (std::abs(ed.a - 1.0) > 1e-6) {
        throw ConsistencyError("wigner_decompose: scalar branch with diagonal away from +-1");
      }
      break;
  }
  return wd;
}

}  // namespace wigner_abcd
