#pragma once

// Two-mirror laser cavity with separation normalized to one. A round trip
// is two identical half-cycles: free flight x, mirror, free flight 1 - x.
//
// The general exponent formulas apply unchanged to the half-cycle. Note that
// r = sqrt((b^2 + c^2) / (-2bc)) phi evaluates, at x = 1/2, to
// sqrt((4 - 4f + 17f^2) / (16f - 8f^2)) phi; reconstruction checks confirm
// this coefficient.

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "errors.hpp"
#include "exp_form.hpp"
#include "mat2.hpp"
#include "sl2.hpp"

namespace wigner_abcd::cavity {

struct CavityConfig {
  double f = 0.0;  // separation / mirror radius
  double x = 0.5;  // start position from a mirror, in units of the separation
};

// f = 0 is accepted as the flat-mirror limit.
inline void validate(const CavityConfig& cfg) {
  if (!(std::isfinite(cfg.f) && std::isfinite(cfg.x))) throw ValidationError("CavityConfig: non-finite field");
  if (cfg.f < 0.0) throw ValidationError("CavityConfig: f must be non-negative");
  if (cfg.x < 0.0 || cfg.x > 1.0) throw ValidationError("CavityConfig: x must lie in [0, 1]");
}

inline UniMat2 mirror_matrix(double f) { return UniMat2::trusted({1.0, 0.0, -2.0 * f, 1.0}); }
inline UniMat2 gap_matrix(double d) { return UniMat2::trusted({1.0, d, 0.0, 1.0}); }

// Closed-form half-cycle entries {A, B, C, D} over any field-like scalar.
template <typename T>
std::array<T, 4> half_cycle_entries(const T& f, const T& x) {
  const T one(1);
  const T two(2);
  return {one - two * x * f, one - two * x * f * (one - x), -two * f, one - two * f * (one - x)};
}

inline UniMat2 half_cycle(const CavityConfig& cfg) {
  validate(cfg);
  const auto e = half_cycle_entries(cfg.f, cfg.x);
  return UniMat2::trusted({e[0], e[1], e[2], e[3]});
}

// Rotation to the equi-diagonal frame: tan(alpha) = 2f(2x - 1) / (1 - 2f(1 + x - x^2)).
// The tangent fixes alpha only modulo pi; this returns the value in
// (-pi/2, pi/2], so alpha = 0 at x = 1/2 for every f. equidiagonalize keeps
// the full atan2 range and may differ from this by pi.
inline double cavity_alpha(const CavityConfig& cfg) {
  validate(cfg);
  const double f = cfg.f;
  const double x = cfg.x;
  double alpha = std::atan2(2.0 * f * (2.0 * x - 1.0), 1.0 - 2.0 * f * (1.0 + x - x * x));
  if (alpha > kHalfPi) alpha -= std::numbers::pi;
  else if (alpha <= -kHalfPi) alpha += std::numbers::pi;
  return alpha;
}

struct MidCavityDecomp {
  double phi = 0.0;
  double eta = 0.0;

  // [[cos phi, e^eta sin phi], [-e^-eta sin phi, cos phi]]; phi and eta enter
  // with signs opposite to the general circular form.
  UniMat2 matrix() const {
    const double s = std::sin(phi);
    return UniMat2::trusted({std::cos(phi), std::exp(eta) * s, -std::exp(-eta) * s, std::cos(phi)});
  }
};

// cos(phi) = 1 - f, e^{2 eta} = (2 - f) / 4f for a cycle started mid-way.
inline MidCavityDecomp mid_cavity_decomp(double f) {
  if (!(f > 0.0 && f < 2.0)) throw RangeError("mid_cavity_decomp: f outside the stable range (0, 2)");
  return {std::acos(1.0 - f), 0.5 * std::log((2.0 - f) / (4.0 * f))};
}

inline BranchKind stability(const CavityConfig& cfg, double rel_tol = kDefaultBranchTol) {
  const UniMat2 h = half_cycle(cfg);
  return classify(equidiagonalize(h), rel_tol * h.max_norm());
}

inline bool is_stable(BranchKind k) { return k == BranchKind::Circular; }

inline PeriodicForm half_cycle_form(const CavityConfig& cfg) { return periodic_form(half_cycle(cfg)); }

// n round trips = 2n half-cycles, through the exponential form.
inline UniMat2 n_round_trips(const CavityConfig& cfg, long long n) {
  if (n < 0) throw ValidationError("n_round_trips: negative count");
  return half_cycle_form(cfg).power(2 * n);
}

}  // namespace wigner_abcd::cavity
