#pragma once

#include <complex>
#include <optional>

#include "sealoss/geometry.hpp"
#include "sealoss/sea_surface.hpp"

namespace sealoss {

/// Link hardware. Path loss excludes antenna gains; the polarization
/// mismatch of a circular BS antenna is carried separately.
struct RadioConfig {
  double frequency = 869.5e6;     // Hz
  double tx_power = 18.3;         // dBm
  double tx_antenna_gain = 0.0;   // dBi
  double rx_antenna_gain = 9.0;   // dBi
  double polarization_loss = 3.0; // dB
  double rx_sensitivity = -138.0; // dBm
  std::optional<int> spreading_factor;
  std::optional<double> bandwidth;  // Hz, metadata only

  void validate() const;
  /// Largest path loss the link tolerates (dB).
  [[nodiscard]] double link_budget() const;
};

/// L(d) = L_p0 + 10 n log10(d / d_0).
struct LogDistanceParams {
  double n = 2.0;
  double l_p0 = 0.0;
  double d_0 = 100.0;

  void validate() const;
};

struct ItuParams {
  double time_percentage = 50.0;
  double median_effective_radius_factor = 4.0 / 3.0;

  void validate() const;
};

/// 20 log10(4 pi d / lambda).
double free_space_loss(double distance, double frequency);

/// Two-ray loss over a flat plane with image geometry.
double two_ray_flat(double distance, double tx_height, double rx_height, double frequency,
                    std::complex<double> reflection);

/// Two-ray loss with round-earth reflection geometry. Throws NoSpecularPoint
/// at or beyond the horizon.
double two_ray_round_earth(const LinkGeometry& g, double frequency,
                           std::complex<double> reflection);
double two_ray_round_earth(const LinkGeometry& g, double frequency,
                           const EffectiveReflection& reflection);

/// Antenna-height ceiling of the flat-earth-plus-correction method: 15 m at
/// 868 MHz, scaled as f^(-1/3) elsewhere.
double bullington_height_ceiling(double frequency);
/// True when the ceiling is only advisory at this frequency (outside 868 +/- 100 MHz).
bool bullington_ceiling_is_advisory(double frequency);
/// True when either antenna exceeds the ceiling.
bool bullington_height_exceeded(const LinkGeometry& g, double frequency);

/// Flat-earth two-ray with R = -1 plus the earth-curvature correction.
/// Throws AntennaTooHigh above the ceiling near 868 MHz.
double bullington_loss(const LinkGeometry& g, double frequency, const SeaState& sea = {},
                       Polarization pol = Polarization::Vertical);

/// Round-earth two-ray with the sea's effective reflection coefficient plus
/// the interpolated diffraction factor. Beyond the horizon: free space plus
/// the full diffraction loss.
double rel_loss(const LinkGeometry& g, double frequency, const SeaState& sea, Polarization pol,
                const ReflectionOptions& options = {});

/// Round-earth two-ray part of rel_loss and its diffraction part; their sum is
/// rel_loss inside the horizon.
struct RelBreakdown {
  double two_ray;
  double diffraction;
  bool beyond_horizon;
  [[nodiscard]] double total() const { return two_ray + diffraction; }
};
RelBreakdown rel_breakdown(const LinkGeometry& g, double frequency, const SeaState& sea,
                           Polarization pol, const ReflectionOptions& options = {});

/// Median-condition path loss: free space plus spherical-earth diffraction at
/// the median effective radius. Only T_pc = 50 is supported.
double itu_p2001_reduced_loss(const LinkGeometry& g, double frequency, const ItuParams& itu = {},
                              const SeaState& sea = {},
                              Polarization pol = Polarization::Vertical);

double log_distance_loss(double distance, const LogDistanceParams& p);

}  // namespace sealoss
