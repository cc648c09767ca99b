#include <gtest/gtest.h>

#include <functional>

#include "oracles.hpp"
#include "sealoss/diffraction.hpp"
#include "sealoss/errors.hpp"
#include "sealoss/propagation.hpp"
#include "sealoss/units.hpp"

using namespace sealoss;

namespace {

constexpr double kF = 869.5e6;
const double kTwo = 20.0 * std::log10(2.0);

LinkGeometry campaign(int which, double d) { return {0.35, which == 1 ? 2.65 : 5.2, d}; }

// Change across the seam minus the mean change over the neighbouring 2 m
// intervals, so the curve's own slope is not counted as a jump.
double seam_jump(const std::function<double(double)>& loss, double seam) {
  const double across = loss(seam + 1.0) - loss(seam - 1.0);
  const double left = loss(seam - 1.0) - loss(seam - 3.0);
  const double right = loss(seam + 3.0) - loss(seam + 1.0);
  return std::abs(across - 0.5 * (left + right));
}

ReflectionOptions no_shadowing() {
  ReflectionOptions o;
  o.shadowing = false;
  return o;
}

}  // namespace

TEST(FreeSpace, KnownValueAndSlope) {
  EXPECT_NEAR(free_space_loss(1000.0, kF), 91.23, 0.01);
  for (double d : {1.0, 37.0, 1000.0, 1e5}) {
    EXPECT_NEAR(free_space_loss(2.0 * d, kF) - free_space_loss(d, kF), 6.0206, 1e-4);
  }
  EXPECT_THROW(free_space_loss(0.0, kF), Error);
}

TEST(TwoRayFlat, MatchesImageOracle) {
  const std::complex<double> r = oracle::snell_reflection(0.01, kF, 70, 5, true);
  for (double d = 5.0; d < 20'000.0; d *= 1.37) {
    for (std::complex<double> refl : {std::complex<double>(-1.0, 0.0), r}) {
      const double want = oracle::two_ray_flat_db(d, 0.35, 5.2, kF, refl);
      EXPECT_NEAR(two_ray_flat(d, 0.35, 5.2, kF, refl), want, 1e-6 * std::max(1.0, std::abs(want)))
          << d;
    }
  }
}

TEST(TwoRayFlat, FarFieldAsymptote) {
  const double d = 5000.0;
  const double plane_earth = 40.0 * std::log10(d) - 20.0 * std::log10(0.35 * 5.2);
  EXPECT_NEAR(plane_earth, 142.8, 0.05);
  EXPECT_NEAR(two_ray_flat(d, 0.35, 5.2, kF, -1.0), plane_earth, 0.5);
}

TEST(TwoRayFlat, NullsAtWholeWavelengthPathDifference) {
  const double lam = wavelength(kF);
  const double ht = 0.35;
  const double hr = 5.2;
  // The m = 1 null; higher orders fall within a couple of metres of the mast.
  for (int m : {1}) {
    // Path difference 4 ht hr / (r + l) = m lambda; solve by bisection.
    double lo = 0.1;
    double hi = 1000.0;
    auto diff = [&](double d) {
      return 4.0 * ht * hr / (std::hypot(d, ht + hr) + std::hypot(d, ht - hr)) - m * lam;
    };
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (diff(mid) > 0 ? lo : hi) = mid;
    }
    const double d_null = 0.5 * (lo + hi);
    auto excess = [&](double d) {
      return two_ray_flat(d, ht, hr, kF, -1.0) - free_space_loss(d, kF);
    };
    EXPECT_GT(excess(d_null), 15.0) << "m = " << m;
    // Unequal ray lengths shift the deepest point slightly off the phase null.
    double best = d_null;
    for (double d = d_null / 1.3; d < d_null * 1.3; d *= 1.0005) {
      if (excess(d) > excess(best)) best = d;
    }
    EXPECT_NEAR(best / d_null, 1.0, 0.05) << "m = " << m;
  }
}

TEST(TwoRayRoundEarth, FlatLimitEquivalence) {
  const EarthModel flat{kEarthRadius, 1e9};
  const std::complex<double> r = oracle::snell_reflection(0.02, kF, 70, 5, true);
  for (int which : {1, 2}) {
    const LinkGeometry base = campaign(which, 100.0);
    const double dc = critical_distance(base, wavelength(kF));
    const double dh = horizon_distance(base);
    for (double d = dc; d <= 0.5 * dh; d *= 1.05) {
      const LinkGeometry g(base.tx_height(), base.rx_height(), d, flat);
      for (std::complex<double> refl : {std::complex<double>(-1.0, 0.0), r}) {
        EXPECT_NEAR(two_ray_round_earth(g, kF, refl),
                    two_ray_flat(d, g.tx_height(), g.rx_height(), kF, refl), 1e-4)
            << d;
      }
    }
  }
}

TEST(TwoRayRoundEarth, ThrowsBeyondHorizon) {
  const LinkGeometry g = campaign(2, 12'000.0);
  EXPECT_THROW(two_ray_round_earth(g, kF, -1.0), Error);
}

TEST(Diffraction, CorrectionZeroBeforeD60AndTargetAtHorizon) {
  const LinkGeometry g = campaign(2, 40.0);
  auto target = [](const LinkGeometry&) { return 12.0; };
  EXPECT_DOUBLE_EQ(diffraction_correction(g, kF, target), 0.0);
  const double dh = horizon_distance(g);
  EXPECT_NEAR(diffraction_correction(g.with_distance(dh), kF, target), 12.0, 1e-12);
  const double d60 = fresnel60_distance(g, kF);
  const double mid = std::sqrt(d60 * dh);
  EXPECT_NEAR(diffraction_correction(g.with_distance(mid), kF, target), 6.0, 1e-9);
}

TEST(Diffraction, FirstTermGrowsBeyondHorizon) {
  const LinkGeometry g = campaign(2, 1.0);
  const double dh = horizon_distance(g);
  double prev = smooth_earth_diffraction_loss(g.with_distance(dh), kF);
  for (double d = dh * 1.1; d < 5.0 * dh; d *= 1.1) {
    const double loss = smooth_earth_diffraction_loss(g.with_distance(d), kF);
    EXPECT_GT(loss, prev);
    prev = loss;
  }
  EXPECT_DOUBLE_EQ(smooth_earth_diffraction_loss(campaign(2, 1.0), kF), 0.0);
}

TEST(Diffraction, CurvatureCorrectionBelowTwentyDbAtHorizon) {
  for (int which : {1, 2}) {
    const LinkGeometry g = campaign(which, 1.0);
    const double dh = horizon_distance(g);
    const double c = curvature_loss(g.with_distance(dh), kF);
    EXPECT_GE(c, 0.0);
    EXPECT_LT(c, 20.0);
    EXPECT_GT(curvature_loss(g.with_distance(2.0 * dh), kF), 0.0);
  }
}

TEST(Diffraction, SphericalEarthZeroWithClearLineOfSight) {
  EXPECT_DOUBLE_EQ(spherical_earth_diffraction_loss(LinkGeometry(30.0, 30.0, 1000.0), kF), 0.0);
}

TEST(Bullington, ContinuousAcrossSeams) {
  for (int which : {1, 2}) {
    const LinkGeometry g = campaign(which, 1.0);
    for (double seam : {fresnel60_distance(g, kF), horizon_distance(g)}) {
      const auto loss = [&](double d) { return bullington_loss(g.with_distance(d), kF); };
      EXPECT_LT(seam_jump(loss, seam), 0.5) << which << " at " << seam;
    }
  }
}

TEST(Bullington, HeightCeiling) {
  EXPECT_NEAR(bullington_height_ceiling(868e6), 15.0, 1e-12);
  EXPECT_NEAR(bullington_height_ceiling(868e6 * 8.0), 7.5, 1e-12);
  try {
    (void)bullington_loss(LinkGeometry(0.35, 20.0, 1000.0), kF);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AntennaTooHigh);
  }
  EXPECT_TRUE(bullington_ceiling_is_advisory(2.4e9));
  EXPECT_NO_THROW((void)bullington_loss(LinkGeometry(0.35, 20.0, 1000.0), 2.4e9));
}

TEST(Bullington, FollowsFlatTwoRayInsideD60) {
  const LinkGeometry g = campaign(2, 40.0);
  EXPECT_DOUBLE_EQ(bullington_loss(g, kF), two_ray_flat(40.0, 0.35, 5.2, kF, -1.0));
}

TEST(Rel, ContinuousAcrossSeams) {
  const SeaState sea;
  for (int which : {1, 2}) {
    const LinkGeometry g = campaign(which, 1.0);
    for (double seam : {fresnel60_distance(g, kF), horizon_distance(g)}) {
      const auto loss = [&](double d) {
        return rel_loss(g.with_distance(d), kF, sea, Polarization::Vertical, no_shadowing());
      };
      EXPECT_LT(seam_jump(loss, seam), 0.5) << which << " at " << seam;
    }
  }
}

TEST(Rel, BreakdownSumsAndSwitchesBeyondHorizon) {
  const SeaState sea;
  const LinkGeometry inside = campaign(2, 5000.0);
  const auto b = rel_breakdown(inside, kF, sea, Polarization::Vertical);
  EXPECT_FALSE(b.beyond_horizon);
  EXPECT_DOUBLE_EQ(b.total(), rel_loss(inside, kF, sea, Polarization::Vertical));
  const LinkGeometry outside = campaign(2, 15'000.0);
  const auto o = rel_breakdown(outside, kF, sea, Polarization::Vertical);
  EXPECT_TRUE(o.beyond_horizon);
  EXPECT_DOUBLE_EQ(o.two_ray, free_space_loss(15'000.0, kF));
}

TEST(Rel, AboveBullingtonOnAverage) {
  const SeaState sea;
  for (int which : {1, 2}) {
    double sum = 0.0;
    int n = 0;
    for (double d = 1000.0; d <= 9500.0; d += 100.0) {
      const LinkGeometry g = campaign(which, d);
      sum += rel_loss(g, kF, sea, Polarization::Vertical, no_shadowing()) - bullington_loss(g, kF);
      ++n;
    }
    EXPECT_GT(sum / n, 0.0) << which;
  }
}

TEST(Itu, FreeSpaceAtShortRange) {
  // Between d_c and d60 the first Fresnel zone is still clear.
  for (int which : {1, 2}) {
    const LinkGeometry g = campaign(which, 1.0);
    const double dc = critical_distance(g, wavelength(kF));
    const double d60 = fresnel60_distance(g, kF);
    for (double d = dc; d < d60; d += 1.0) {
      EXPECT_NEAR(itu_p2001_reduced_loss(g.with_distance(d), kF), free_space_loss(d, kF), 1.0) << d;
    }
  }
  const LinkGeometry tall(30.0, 30.0, 2000.0);
  EXPECT_DOUBLE_EQ(itu_p2001_reduced_loss(tall, kF), free_space_loss(2000.0, kF));
}

TEST(Itu, DiffractionGrowsOnceFresnelZoneIsObstructed) {
  const LinkGeometry g = campaign(2, 1.0);
  const double d60 = fresnel60_distance(g, kF);
  EXPECT_GT(itu_p2001_reduced_loss(g.with_distance(3.0 * d60), kF) -
                free_space_loss(3.0 * d60, kF),
            1.0);
}

TEST(Itu, CloseToBullingtonOnCampaignTwo) {
  for (double d = 1000.0; d <= 9800.0; d += 100.0) {
    const LinkGeometry g = campaign(2, d);
    EXPECT_LT(std::abs(itu_p2001_reduced_loss(g, kF) - bullington_loss(g, kF)), 10.0) << d;
  }
}

TEST(Itu, MonotoneBeyondCriticalDistance) {
  for (int which : {1, 2}) {
    const LinkGeometry g = campaign(which, 1.0);
    double prev = 0.0;
    for (double d = critical_distance(g, wavelength(kF)); d < 50'000.0; d *= 1.02) {
      const double loss = itu_p2001_reduced_loss(g.with_distance(d), kF);
      EXPECT_GE(loss, prev - 1e-9) << d;
      prev = loss;
    }
  }
}

TEST(Itu, Domain) {
  const LinkGeometry g = campaign(2, 1000.0);
  try {
    (void)itu_p2001_reduced_loss(g, 10e6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FrequencyOutOfRange);
  }
  try {
    (void)itu_p2001_reduced_loss(g, kF, ItuParams{10.0, 4.0 / 3.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotImplemented);
  }
}

TEST(LogDistance, Properties) {
  const LogDistanceParams p{4.0, 73.0, 100.0};
  EXPECT_DOUBLE_EQ(log_distance_loss(100.0, p), 73.0);
  EXPECT_NEAR(log_distance_loss(1000.0, p) - log_distance_loss(100.0, p), 40.0, 1e-12);
  EXPECT_NEAR(log_distance_loss(2000.0, p) - log_distance_loss(1000.0, p), 2.0 * kTwo, 1e-12);
  EXPECT_THROW(log_distance_loss(-1.0, p), Error);
  EXPECT_THROW((LogDistanceParams{2.0, 0.0, 0.0}.validate()), Error);
}

TEST(RadioConfig, BudgetAndValidation) {
  RadioConfig r;
  EXPECT_NEAR(r.link_budget(), 18.3 + 0.0 + 6.0 + 138.0, 1e-12);
  r.rx_sensitivity = -std::numeric_limits<double>::infinity();
  EXPECT_THROW(r.validate(), Error);
}
