#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "wigner_abcd/laser_cavity.hpp"

using namespace wigner_abcd;
using namespace wigner_abcd::cavity;
using wigner_abcd::test_util::Rational;

namespace {

void expect_near(const Mat2& actual, const Mat2& expected, double tol) {
  EXPECT_LE(max_abs_diff(actual, expected), tol) << "actual " << actual << "\nexpected " << expected;
}

}  // namespace

TEST(CavityElements, Examples) {
  expect_near(mirror_matrix(0.0), Mat2::identity(), 0.0);
  expect_near(mirror_matrix(0.1), Mat2(1.0, 0.0, -0.2, 1.0), 0.0);
  expect_near(gap_matrix(1.0), Mat2(1.0, 1.0, 0.0, 1.0), 0.0);
}

TEST(CavityConfig, Validation) {
  EXPECT_THROW(half_cycle({-0.1, 0.5}), ValidationError);
  EXPECT_THROW(half_cycle({0.1, 1.5}), ValidationError);
  EXPECT_THROW(half_cycle({NAN, 0.5}), ValidationError);
}

TEST(HalfCycle, ExactAtTenthFocusing) {
  const Rational f(1, 10);
  const Rational x(1, 2);
  const auto e = half_cycle_entries(f, x);
  EXPECT_EQ(e[0], Rational(9, 10));
  EXPECT_EQ(e[1], Rational(19, 20));
  EXPECT_EQ(e[2], Rational(-1, 5));
  EXPECT_EQ(e[3], Rational(9, 10));
  EXPECT_EQ(e[0] * e[3] - e[1] * e[2], Rational(1));

  // The same matrix as the exact three-factor product.
  const auto mul = [](const std::array<Rational, 4>& p, const std::array<Rational, 4>& q) {
    return std::array<Rational, 4>{p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
                                   p[2] * q[1] + p[3] * q[3]};
  };
  const std::array<Rational, 4> gap_x{1, x, 0, 1};
  const std::array<Rational, 4> mirror{1, 0, -(Rational(2) * f), 1};
  const std::array<Rational, 4> gap_rest{1, Rational(1) - x, 0, 1};
  EXPECT_EQ(mul(mul(gap_x, mirror), gap_rest), e);
}

TEST(HalfCycle, Examples) {
  expect_near(half_cycle({0.1, 0.5}), Mat2(0.9, 0.95, -0.2, 0.9), 1e-15);
  expect_near(half_cycle({0.0, 0.3}), Mat2(1.0, 1.0, 0.0, 1.0), 0.0);
  expect_near(half_cycle({0.1, 0.0}), Mat2(1.0, 1.0, -0.2, 0.8), 1e-15);
}

TEST(CavityAlpha, Examples) {
  for (double f : {0.05, 0.5, 1.3, 3.0}) EXPECT_EQ(cavity_alpha({f, 0.5}), 0.0);
  EXPECT_EQ(cavity_alpha({0.0, 0.3}), 0.0);
  EXPECT_NEAR(cavity_alpha({0.1, 1.0}), std::atan2(0.2, 0.8), 1e-15);
}

TEST(CavityAlpha, MatchesEquidiagonalize) {
  for (double f = 0.0; f <= 3.0; f += 0.15) {
    for (double x = 0.0; x <= 1.0; x += 0.1) {
      const CavityConfig cfg{f, x};
      const double diff = cavity_alpha(cfg) - equidiagonalize(half_cycle(cfg)).alpha;
      EXPECT_NEAR(std::remainder(diff, std::numbers::pi), 0.0, 1e-14) << f << " " << x;
    }
  }
}

TEST(MidCavity, TenthFocusing) {
  const MidCavityDecomp d = mid_cavity_decomp(0.1);
  EXPECT_NEAR(std::cos(d.phi), 0.9, 1e-12);
  EXPECT_NEAR(std::exp(2 * d.eta), 4.75, 1e-12);
  expect_near(d.matrix(), half_cycle({0.1, 0.5}), 1e-12);
}

TEST(MidCavity, UnitFocusing) {
  const MidCavityDecomp d = mid_cavity_decomp(1.0);
  EXPECT_NEAR(d.phi, std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(std::exp(2 * d.eta), 0.25, 1e-15);
  expect_near(d.matrix(), half_cycle({1.0, 0.5}), 1e-12);
}

TEST(MidCavity, ApproachesBoundary) {
  EXPECT_NEAR(mid_cavity_decomp(2.0 - 1e-12).phi, std::numbers::pi, 2e-6);
  EXPECT_THROW(mid_cavity_decomp(0.0), RangeError);
  EXPECT_THROW(mid_cavity_decomp(2.0), RangeError);
  EXPECT_THROW(mid_cavity_decomp(2.5), RangeError);
}

// Below f = 0.4 the half-cycle has B + C > 0, so the general decomposition
// also lands at alpha = 0 and the two parameterizations compare directly.
TEST(MidCavity, OppositeSignsToGeneralForm) {
  for (double f : {0.1, 0.25, 0.39}) {
    const MidCavityDecomp d = mid_cavity_decomp(f);
    const WignerDecomp wd = wigner_decompose(half_cycle({f, 0.5}));
    EXPECT_NEAR(wd.param, -d.phi, 1e-12);
    EXPECT_NEAR(wd.eta, -d.eta, 1e-12);
  }
}

TEST(Stability, Examples) {
  EXPECT_EQ(stability({0.1, 0.5}), BranchKind::Circular);
  EXPECT_TRUE(is_stable(stability({0.1, 0.5})));
  EXPECT_EQ(stability({2.5, 0.5}), BranchKind::Hyperbolic);
  EXPECT_TRUE(is_parabolic(stability({0.0, 0.5})));
  EXPECT_TRUE(is_parabolic(stability({2.0, 0.5})));
}

TEST(Stability, RegionAtMidCavityIsZeroToTwo) {
  for (double f = 0.01; f < 4.0; f += 0.01) {
    if (std::abs(f - 2.0) < 1e-9) continue;
    EXPECT_EQ(is_stable(stability({f, 0.5})), f < 2.0) << f;
  }
}

TEST(NRoundTrips, Examples) {
  const CavityConfig cfg{0.1, 0.5};
  expect_near(n_round_trips(cfg, 0), Mat2::identity(), 0.0);
  const UniMat2 h = half_cycle(cfg);
  expect_near(n_round_trips(cfg, 1), h * h, 1e-14);
  expect_near(n_round_trips(cfg, 1000), power_by_multiplication(h, 2000), 1e-8);
  EXPECT_THROW(n_round_trips(cfg, -1), ValidationError);
}

TEST(NRoundTrips, AgreesWithBruteForceOffCentre) {
  for (double f : {0.05, 0.2, 0.5}) {
    for (double x : {0.0, 0.25, 0.9}) {
      const CavityConfig cfg{f, x};
      const UniMat2 h = half_cycle(cfg);
      for (long long n : {1LL, 17LL, 250LL, 1000LL}) {
        expect_near(n_round_trips(cfg, n), power_by_multiplication(h, 2 * n), 1e-8);
      }
    }
  }
}

TEST(ExpForm, GeneralCoefficientReconstructsHalfCycle) {
  for (double f : {0.1, 0.4, 1.2}) {
    const UniMat2 h = half_cycle({f, 0.5});
    const EquiDiag ed = equidiagonalize(h);
    const ExpForm form = log_to_expform(ed);
    expect_near(exp_closed(form), ed.core(), 1e-12);
    expect_near(periodic_form(h).power(1), h, 1e-12);
    const double phi = std::acos(1.0 - f);
    EXPECT_NEAR(std::abs(form.r), std::sqrt((4 - 4 * f + 17 * f * f) / (16 * f - 8 * f * f)) * phi, 1e-12);
  }
}

TEST(CavityProperties, ProductGridAndDeterminant) {
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double f = 0.05 + 0.3 * i;
      const double x = j == 9 ? 1.0 : j / 10.0;  // includes both ends and 1/2
      const UniMat2 h = half_cycle({f, x});
      expect_near(h, gap_matrix(x) * mirror_matrix(f) * gap_matrix(1.0 - x), 1e-12);
      EXPECT_NEAR(h.det(), 1.0, 1e-12);
      if (x == 0.5) {
        EXPECT_EQ(h.e11(), h.e22());
      }
    }
  }
}

TEST(CavityProperties, FullCycleIsTwoHalves) {
  for (double f : {0.1, 0.9, 2.4}) {
    // Mirror, gap, mirror, gap, started at the midpoint.
    const UniMat2 full = gap_matrix(0.5) * mirror_matrix(f) * gap_matrix(1.0) * mirror_matrix(f) * gap_matrix(0.5);
    const UniMat2 h = half_cycle({f, 0.5});
    expect_near(full, h * h, 1e-12);
  }
}
