#pragma once

// Optical activity in a medium whose attenuation differs along two
// transverse axes. The transverse field rotates at the rotary power gamma
// while the attenuation asymmetry mu squeezes it along axes at 45 degrees;
// the combined transfer matrix is e^{-lambda z} exp{k z M(theta)} with
// k = sqrt(gamma^2 + mu^2), tan(theta) = mu / gamma.

#include <cmath>
#include <span>
#include <vector>

#include "errors.hpp"
#include "exp_form.hpp"
#include "mat2.hpp"
#include "sl2.hpp"

namespace wigner_abcd::activity {

struct MediumParams {
  double gamma = 0.0;       // rotary power, (k1 - k2) / 2
  double mu = 0.0;          // attenuation asymmetry, (mu2 - mu1) / 2
  double lambda_att = 0.0;  // mean attenuation, (mu2 + mu1) / 2
  double k_mean = 0.0;      // mean wave number; carried, not used in matrices

  static MediumParams from_components(double k1, double k2, double mu1, double mu2) {
    return {0.5 * (k1 - k2), 0.5 * (mu2 - mu1), 0.5 * (mu2 + mu1), 0.5 * (k1 + k2)};
  }
};

struct FieldSample {
  double z = 0.0;
  double ex = 0.0;
  double ey = 0.0;
};

inline void validate(const MediumParams& p) {
  if (!(std::isfinite(p.gamma) && std::isfinite(p.mu) && std::isfinite(p.lambda_att) && std::isfinite(p.k_mean))) {
    throw ValidationError("MediumParams: non-finite field");
  }
  if (p.lambda_att < 0.0) throw ValidationError("MediumParams: mean attenuation must be non-negative");
}

inline double envelope(const MediumParams& p, double z) { return std::exp(-p.lambda_att * z); }

// sqrt(|gamma^2 - mu^2|): gamma' on the rotating side, mu' on the squeezing side.
inline double effective_rate(const MediumParams& p) {
  return std::sqrt(std::abs((p.gamma - p.mu) * (p.gamma + p.mu)));
}

// Exponent of the unattenuated part at distance z.
inline ExpForm activity_expform(const MediumParams& p, double z) {
  validate(p);
  const double k = std::hypot(p.gamma, p.mu);
  if (k == 0.0) return {};
  double theta = std::atan2(p.mu, p.gamma);
  double r = k * z;
  if (theta > kHalfPi) {
    theta -= std::numbers::pi;
    r = -r;
  } else if (theta <= -kHalfPi) {
    theta += std::numbers::pi;
    r = -r;
  }
  return {r, theta, 1};
}

inline Mat2 z_matrix(const MediumParams& p, double z) {
  validate(p);
  if (!(z >= 0.0) || !std::isfinite(z)) throw ValidationError("z_matrix: distance must be finite and non-negative");
  return envelope(p, z) * exp_closed(activity_expform(p, z)).mat();
}

// The literal product [e^{-lambda z/n} S(mu z/n) R(gamma z/n)]^n with the
// 45-degree squeeze S and the full-angle rotation R.
inline Mat2 micro_product(const MediumParams& p, double z, long long n) {
  validate(p);
  if (n < 1) throw ValidationError("micro_product: n must be at least 1");
  if (!(z >= 0.0) || !std::isfinite(z)) throw ValidationError("micro_product: distance must be finite and non-negative");
  const double dz = z / static_cast<double>(n);
  const double sq = p.mu * dz;
  const Mat2 squeeze45(std::cosh(sq), std::sinh(sq), std::sinh(sq), std::cosh(sq));
  const Mat2 step = std::exp(-p.lambda_att * dz) * (squeeze45 * rotation_full(p.gamma * dz).mat());
  Mat2 acc = Mat2::identity();
  for (long long k = 0; k < n; ++k) acc = acc * step;
  return acc;
}

/**
 * Transverse field along z for a ray launched as (1, 0) in the frame turned
 * by the half-angle rotation R(alpha). With no attenuation the samples are
 * (cos(gamma z + alpha/2), sin(gamma z + alpha/2)).
 */
inline std::vector<FieldSample> trajectory(const MediumParams& p, double alpha, std::span<const double> z_grid) {
  validate(p);
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    if (!(z_grid[i] >= 0.0)) throw ValidationError("trajectory: z must be non-negative");
    if (i > 0 && z_grid[i] < z_grid[i - 1]) throw ValidationError("trajectory: z grid must be ascending");
  }
  const Mat2 frame = rotation_half(alpha).mat();
  const double x0 = frame.e11();
  const double y0 = frame.e21();
  std::vector<FieldSample> out;
  out.reserve(z_grid.size());
  for (double z : z_grid) {
    const Mat2 prop = frame * z_matrix(p, z) * rotation_half(-alpha).mat();
    out.push_back({z, prop.e11() * x0 + prop.e12() * y0, prop.e21() * x0 + prop.e22() * y0});
  }
  return out;
}

}  // namespace wigner_abcd::activity
