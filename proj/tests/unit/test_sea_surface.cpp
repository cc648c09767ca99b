#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sealoss/errors.hpp"
#include "sealoss/sea_surface.hpp"
#include "sealoss/units.hpp"

using namespace sealoss;

namespace {
constexpr double kF = 869.5e6;
}

TEST(Fresnel, GrazingLimitIsMinusOne) {
  const SeaState sea;
  for (Polarization pol : {Polarization::Vertical, Polarization::Horizontal}) {
    const auto r = fresnel_reflection(1e-7, kF, sea, pol);
    EXPECT_NEAR(r.real(), -1.0, 1e-4);
    EXPECT_NEAR(r.imag(), 0.0, 1e-4);
  }
}

TEST(Fresnel, PerfectConductorHasUnitMagnitude) {
  SeaState pec;
  pec.conductivity = 1e12;
  for (double psi : {0.01, 0.3, 1.0, kPi / 2}) {
    EXPECT_NEAR(std::abs(fresnel_reflection(psi, kF, pec, Polarization::Vertical)), 1.0, 1e-4);
    EXPECT_NEAR(std::abs(fresnel_reflection(psi, kF, pec, Polarization::Horizontal)), 1.0, 1e-4);
  }
}

TEST(Fresnel, MatchesSnellLawOracle) {
  const SeaState sea;
  for (double psi : {1e-4, 0.001, 0.01, 0.05, 0.2, 0.7, 1.2, kPi / 2}) {
    for (bool vertical : {true, false}) {
      const auto lib = fresnel_reflection(psi, kF, sea,
                                          vertical ? Polarization::Vertical : Polarization::Horizontal);
      const auto ref =
          oracle::snell_reflection(psi, kF, sea.relative_permittivity, sea.conductivity, vertical);
      EXPECT_NEAR(lib.real(), ref.real(), 1e-10) << psi << " " << vertical;
      EXPECT_NEAR(lib.imag(), ref.imag(), 1e-10) << psi << " " << vertical;
    }
  }
}

TEST(Fresnel, CircularUsesVertical) {
  const SeaState sea;
  EXPECT_EQ(fresnel_reflection(0.1, kF, sea, Polarization::Circular),
            fresnel_reflection(0.1, kF, sea, Polarization::Vertical));
}

TEST(Fresnel, VerticalMinimumNearBrewster) {
  // Vertical magnitude dips well below horizontal at moderate angles.
  const SeaState sea;
  const double v = std::abs(fresnel_reflection(0.12, kF, sea, Polarization::Vertical));
  const double h = std::abs(fresnel_reflection(0.12, kF, sea, Polarization::Horizontal));
  EXPECT_LT(v, h);
}

TEST(Fresnel, RejectsBadAngle) {
  EXPECT_THROW(fresnel_reflection(0.0, kF, {}, Polarization::Vertical), Error);
  EXPECT_THROW(fresnel_reflection(2.0, kF, {}, Polarization::Vertical), Error);
}

TEST(Roughness, MillerBrownVeghAtHalf) {
  // g = 0.5 -> 2 g^2 = 0.5.
  const double lam = wavelength(kF);
  SeaState sea;
  const double psi = 0.2;
  sea.sigma_h = 0.5 * lam / (2.0 * kPi * std::sin(psi));
  const double expected = std::exp(-0.5) * oracle::bessel_i0_series(0.5);
  EXPECT_NEAR(expected, 0.6450, 1e-4);
  EXPECT_NEAR(roughness_factor(psi, lam, sea), expected, 1e-12);
  EXPECT_NEAR(roughness_factor(psi, lam, sea, RoughnessModel::Ament), std::exp(-0.5), 1e-12);
}

TEST(Roughness, SeriesAgreementAcrossRange) {
  const double lam = wavelength(kF);
  SeaState sea;
  for (double g : {0.0, 0.1, 1.0, 2.0, 3.0, 4.5}) {
    sea.sigma_h = g * lam / (2.0 * kPi * std::sin(0.3));
    const double z = 2.0 * g * g;
    EXPECT_NEAR(roughness_factor(0.3, lam, sea), std::exp(-z) * oracle::bessel_i0_series(z), 1e-10)
        << g;
  }
}

TEST(Roughness, LimitsAndMonotone) {
  const double lam = wavelength(kF);
  SeaState calm;
  calm.sigma_h = 0.0;
  EXPECT_DOUBLE_EQ(roughness_factor(0.3, lam, calm), 1.0);
  SeaState sea;
  double prev = 1.0;
  for (double psi = 0.001; psi < 1.5; psi += 0.05) {
    const double r = roughness_factor(psi, lam, sea);
    EXPECT_LE(r, prev + 1e-15);
    EXPECT_GT(r, 0.0);
    prev = r;
  }
  // Large roughness decays like 1 / sqrt(4 pi g^2).
  sea.sigma_h = 10.0;
  const double g = 2.0 * kPi * sea.sigma_h * std::sin(1.0) / lam;
  EXPECT_NEAR(roughness_factor(1.0, lam, sea) * std::sqrt(4.0 * kPi * g * g), 1.0, 1e-3);
}

TEST(Shadowing, Limits) {
  SeaState sea;
  EXPECT_NEAR(shadowing_factor(kPi / 2 - 1e-9, sea), 1.0, 1e-12);
  EXPECT_LT(shadowing_factor(1e-4, sea), 0.01);
  SeaState flat;
  flat.beta_0 = 0.0;
  EXPECT_DOUBLE_EQ(shadowing_factor(0.01, flat), 1.0);
  double prev = 0.0;
  for (double psi = 1e-4; psi < 1.5; psi *= 1.5) {
    const double s = shadowing_factor(psi, sea);
    EXPECT_GE(s, prev);
    prev = s;
  }
}

TEST(Shadowing, AgreesWithMonteCarloSurface) {
  SeaState sea;
  sea.beta_0 = 0.05;
  for (double psi : {0.05, 0.1}) {
    double mc = 0.0;
    for (std::uint64_t seed : {1u, 2u, 3u}) mc += oracle::shadowing_monte_carlo(psi, sea.beta_0, seed);
    mc /= 3.0;
    const double smith = shadowing_factor(psi, sea);
    EXPECT_NEAR(smith, mc, 0.05) << "psi " << psi;
    // Smith's function ignores correlation between heights and slopes and
    // is known to slightly overestimate illumination.
    EXPECT_GE(smith, mc - 0.01);
  }
}

TEST(Divergence, LimitsAndOracle) {
  const LinkGeometry near(0.35, 5.2, 30.0);
  const auto rg_near = reflection_geometry(near);
  EXPECT_NEAR(divergence_factor(rg_near, near), 1.0, 1e-3);

  const LinkGeometry flat(0.35, 5.2, 5000.0, EarthModel{kEarthRadius, 1e9});
  EXPECT_NEAR(divergence_factor(reflection_geometry(flat), flat), 1.0, 1e-6);

  const LinkGeometry far(0.35, 5.2, 8000.0);
  const auto rg = reflection_geometry(far);
  const double d1 = rg.tx_arc;
  const double d2 = rg.rx_arc;
  const double expected =
      std::pow(1.0 + 2.0 * d1 * d2 / (kEarthRadius * (d1 + d2) * std::sin(rg.grazing_angle)), -0.5);
  EXPECT_NEAR(divergence_factor(rg, far), expected, 1e-12);
  EXPECT_LT(expected, 1.0);
}

TEST(EffectiveReflection, RecomposesFromComponents) {
  const SeaState sea;
  const LinkGeometry g(0.35, 5.2, 3000.0);
  const auto eff = effective_reflection(g, kF, sea, Polarization::Vertical);
  const auto& c = eff.components;
  EXPECT_NEAR(eff.magnitude, std::abs(c.fresnel) * c.roughness * c.shadowing * c.divergence, 1e-12);
  EXPECT_NEAR(eff.phase, std::arg(c.fresnel), 1e-12);
  const auto coef = eff.coefficient();
  EXPECT_NEAR(std::abs(coef), eff.magnitude, 1e-12);
}

TEST(EffectiveReflection, OptionsDisableFactors) {
  const SeaState sea;
  const LinkGeometry g(0.35, 5.2, 3000.0);
  ReflectionOptions none{RoughnessModel::MillerBrownVegh, false, false, false};
  const auto eff = effective_reflection(g, kF, sea, Polarization::Vertical, none);
  EXPECT_DOUBLE_EQ(eff.components.roughness, 1.0);
  EXPECT_DOUBLE_EQ(eff.components.shadowing, 1.0);
  EXPECT_DOUBLE_EQ(eff.components.divergence, 1.0);
  EXPECT_DOUBLE_EQ(eff.magnitude, std::abs(eff.components.fresnel));
}

TEST(SeaState, Validation) {
  SeaState bad;
  bad.sigma_h = -1.0;
  EXPECT_THROW(bad.validate(), Error);
  bad = {};
  bad.relative_permittivity = 0.5;
  EXPECT_THROW(bad.validate(), Error);
}
