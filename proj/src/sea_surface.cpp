#include "sealoss/sea_surface.hpp"

#include <cmath>

#include "sealoss/errors.hpp"

namespace sealoss {

using detail::fail;

void SeaState::validate() const {
  if (!(sigma_h >= 0.0) || !std::isfinite(sigma_h)) {
    fail(ErrorCode::InvalidArgument, "sigma_h must be >= 0");
  }
  if (!(beta_0 >= 0.0) || !std::isfinite(beta_0)) {
    fail(ErrorCode::InvalidArgument, "beta_0 must be >= 0");
  }
  if (!(relative_permittivity > 1.0)) {
    fail(ErrorCode::InvalidArgument, "relative permittivity must exceed 1");
  }
  if (!(conductivity >= 0.0)) fail(ErrorCode::InvalidArgument, "conductivity must be >= 0");
}

std::complex<double> fresnel_reflection(double grazing_angle, double frequency, const SeaState& sea,
                                        Polarization pol) {
  if (!(grazing_angle > 0.0 && grazing_angle <= kPi / 2.0)) {
    fail(ErrorCode::InvalidArgument, "grazing angle must lie in (0, pi/2]");
  }
  const std::complex<double> eps(sea.relative_permittivity,
                                 -sea.conductivity / (2.0 * kPi * frequency * kVacuumPermittivity));
  const double s = std::sin(grazing_angle);
  const double c = std::cos(grazing_angle);
  const std::complex<double> root = std::sqrt(eps - c * c);
  if (pol == Polarization::Horizontal) return (s - root) / (s + root);
  return (eps * s - root) / (eps * s + root);
}

namespace {

// exp(-z) I0(z) without overflow.
double scaled_bessel_i0(double z) {
  if (z < 50.0) return std::exp(-z) * std::cyl_bessel_i(0.0, z);
  const double inv = 1.0 / z;
  return (1.0 + inv / 8.0 + 9.0 * inv * inv / 128.0 + 225.0 * inv * inv * inv / 3072.0) /
         std::sqrt(2.0 * kPi * z);
}

}  // namespace

double roughness_factor(double grazing_angle, double wavelength, const SeaState& sea,
                        RoughnessModel model) {
  if (!(wavelength > 0.0)) fail(ErrorCode::InvalidArgument, "wavelength must be positive");
  const double g = 2.0 * kPi * sea.sigma_h * std::sin(grazing_angle) / wavelength;
  const double z = 2.0 * g * g;
  if (model == RoughnessModel::Ament) return std::exp(-z);
  return scaled_bessel_i0(z);
}

double shadowing_factor(double grazing_angle, const SeaState& sea) {
  if (!(grazing_angle > 0.0)) fail(ErrorCode::InvalidArgument, "grazing angle must be positive");
  if (sea.beta_0 == 0.0 || grazing_angle >= kPi / 2.0) return 1.0;
  const double nu = std::tan(grazing_angle) / (std::sqrt(2.0) * sea.beta_0);
  if (nu > 25.0) return 1.0;
  const double lambda =
      0.5 * (std::exp(-nu * nu) / (nu * std::sqrt(kPi)) - std::erfc(nu));
  return (1.0 - 0.5 * std::erfc(nu)) / (1.0 + lambda);
}

double divergence_factor(const ReflectionGeometry& rg, const LinkGeometry& g) {
  const double d1 = rg.tx_arc;
  const double d2 = rg.rx_arc;
  const double spread =
      2.0 * d1 * d2 / (g.effective_radius() * (d1 + d2) * std::sin(rg.grazing_angle));
  return 1.0 / std::sqrt(1.0 + spread);
}

EffectiveReflection effective_reflection(const LinkGeometry& g, double frequency,
                                         const SeaState& sea, Polarization pol,
                                         const ReflectionOptions& options) {
  const ReflectionGeometry rg = reflection_geometry(g);
  const double psi = rg.grazing_angle;

  ReflectionComponents parts;
  parts.fresnel = fresnel_reflection(psi, frequency, sea, pol);
  if (options.roughness) {
    parts.roughness = roughness_factor(psi, wavelength(frequency), sea, options.roughness_model);
  }
  if (options.shadowing) parts.shadowing = shadowing_factor(psi, sea);
  if (options.divergence) parts.divergence = divergence_factor(rg, g);

  EffectiveReflection out;
  out.components = parts;
  out.magnitude = std::abs(parts.fresnel) * parts.roughness * parts.shadowing * parts.divergence;
  out.phase = std::arg(parts.fresnel);
  return out;
}

}  // namespace sealoss
