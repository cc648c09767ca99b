#pragma once

#include <complex>

#include "sealoss/geometry.hpp"

namespace sealoss {

enum class Polarization { Vertical, Horizontal, Circular };

enum class RoughnessModel {
  MillerBrownVegh,  // exp(-2g^2) I0(2g^2)
  Ament,            // exp(-2g^2)
};

/// Electrical and statistical sea-surface description.
///
/// `sigma_h` is the surface-height standard deviation in metres and `beta_0`
/// the RMS surface slope. The defaults (and the 70 / 5 S/m seawater values)
/// are placeholders for configuration, not measured sea states.
struct SeaState {
  double sigma_h = 0.1;
  double beta_0 = 0.05;
  double relative_permittivity = 70.0;
  double conductivity = 5.0;  // S/m

  void validate() const;
};

/// Which factors enter the effective reflection coefficient.
struct ReflectionOptions {
  RoughnessModel roughness_model = RoughnessModel::MillerBrownVegh;
  bool roughness = true;
  bool shadowing = true;
  bool divergence = true;
};

struct ReflectionComponents {
  std::complex<double> fresnel;
  double roughness = 1.0;
  double shadowing = 1.0;
  double divergence = 1.0;
};

struct EffectiveReflection {
  double magnitude = 0.0;
  double phase = 0.0;
  ReflectionComponents components;

  [[nodiscard]] std::complex<double> coefficient() const { return std::polar(magnitude, phase); }
};

/// Fresnel coefficient of a lossy dielectric half-space with
/// eps = eps_r - j sigma / (2 pi f eps0). Circular is evaluated as vertical;
/// the polarization mismatch belongs to the link budget.
std::complex<double> fresnel_reflection(double grazing_angle, double frequency, const SeaState& sea,
                                        Polarization pol);

/// Specular attenuation of a Gaussian rough surface, g = 2 pi sigma_h sin(psi) / lambda.
double roughness_factor(double grazing_angle, double wavelength, const SeaState& sea,
                        RoughnessModel model = RoughnessModel::MillerBrownVegh);

/// Smith shadowing function for a Gaussian-slope surface, slope RMS beta_0.
double shadowing_factor(double grazing_angle, const SeaState& sea);

/// Spherical-earth divergence factor
/// D = [1 + 2 d1 d2 / (r_e (d1 + d2) sin psi)]^(-1/2).
double divergence_factor(const ReflectionGeometry& rg, const LinkGeometry& g);

EffectiveReflection effective_reflection(const LinkGeometry& g, double frequency,
                                         const SeaState& sea, Polarization pol,
                                         const ReflectionOptions& options = {});

}  // namespace sealoss
