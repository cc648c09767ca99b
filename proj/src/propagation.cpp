#include "sealoss/propagation.hpp"

#include <cmath>
#include <string>

#include "sealoss/diffraction.hpp"
#include "sealoss/errors.hpp"

namespace sealoss {

using detail::fail;

void RadioConfig::validate() const {
  if (!(frequency > 0.0) || !std::isfinite(frequency)) {
    fail(ErrorCode::InvalidArgument, "frequency must be positive");
  }
  if (!(polarization_loss >= 0.0) || !std::isfinite(polarization_loss)) {
    fail(ErrorCode::InvalidArgument, "polarization loss must be >= 0");
  }
  for (double v : {tx_power, tx_antenna_gain, rx_antenna_gain, rx_sensitivity}) {
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "radio parameters must be finite");
  }
}

double RadioConfig::link_budget() const {
  return tx_power + tx_antenna_gain + rx_antenna_gain - polarization_loss - rx_sensitivity;
}

void LogDistanceParams::validate() const {
  if (!(d_0 > 0.0)) fail(ErrorCode::InvalidArgument, "reference distance must be positive");
  if (!std::isfinite(n) || !std::isfinite(l_p0)) {
    fail(ErrorCode::InvalidArgument, "log-distance parameters must be finite");
  }
}

void ItuParams::validate() const {
  if (!(time_percentage > 0.0 && time_percentage < 100.0)) {
    fail(ErrorCode::InvalidArgument, "time percentage must lie in (0, 100)");
  }
  if (!(median_effective_radius_factor > 0.0)) {
    fail(ErrorCode::InvalidArgument, "median effective radius factor must be positive");
  }
}

double free_space_loss(double distance, double frequency) {
  if (!(distance > 0.0)) fail(ErrorCode::InvalidArgument, "distance must be positive");
  return amplitude_to_db(4.0 * kPi * distance / wavelength(frequency));
}

namespace {

// Two-ray loss in dB. With eps = eps_r - j sigma/(w eps0) the delayed ray carries
// exp(-jk * path difference).
double two_ray_db(double direct, double reflected, double path_difference, double frequency,
                  std::complex<double> reflection) {
  const double lambda = wavelength(frequency);
  const double k = 2.0 * kPi / lambda;
  const std::complex<double> field =
      1.0 / direct + reflection / reflected * std::polar(1.0, -k * path_difference);
  return amplitude_to_db(4.0 * kPi / lambda) - amplitude_to_db(std::abs(field));
}

}  // namespace

double two_ray_flat(double distance, double tx_height, double rx_height, double frequency,
                    std::complex<double> reflection) {
  if (!(distance > 0.0)) fail(ErrorCode::InvalidArgument, "distance must be positive");
  const double direct = std::hypot(distance, tx_height - rx_height);
  const double reflected = std::hypot(distance, tx_height + rx_height);
  // (r^2 - l^2) / (r + l) avoids cancelling two nearly equal lengths.
  const double difference = 4.0 * tx_height * rx_height / (reflected + direct);
  return two_ray_db(direct, reflected, difference, frequency, reflection);
}

double two_ray_round_earth(const LinkGeometry& g, double frequency,
                           std::complex<double> reflection) {
  const ReflectionGeometry rg = reflection_geometry(g);
  return two_ray_db(rg.direct_path, rg.total_reflected_path(), rg.path_difference(), frequency,
                    reflection);
}

double two_ray_round_earth(const LinkGeometry& g, double frequency,
                           const EffectiveReflection& reflection) {
  return two_ray_round_earth(g, frequency, reflection.coefficient());
}

double bullington_height_ceiling(double frequency) {
  return 15.0 * std::cbrt(868e6 / frequency);
}

bool bullington_ceiling_is_advisory(double frequency) {
  return std::abs(frequency - 868e6) > 100e6;
}

bool bullington_height_exceeded(const LinkGeometry& g, double frequency) {
  const double ceiling = bullington_height_ceiling(frequency);
  return g.tx_height() > ceiling || g.rx_height() > ceiling;
}

double bullington_loss(const LinkGeometry& g, double frequency, const SeaState& sea,
                       Polarization pol) {
  if (bullington_height_exceeded(g, frequency) && !bullington_ceiling_is_advisory(frequency)) {
    fail(ErrorCode::AntennaTooHigh,
         "antenna above " + std::to_string(bullington_height_ceiling(frequency)) + " m");
  }
  const double plane =
      two_ray_flat(g.distance(), g.tx_height(), g.rx_height(), frequency, -1.0);
  const double correction = diffraction_correction(g, frequency, [&](const LinkGeometry& at) {
    return curvature_loss(at, frequency, sea, pol);
  });
  return plane + correction;
}

RelBreakdown rel_breakdown(const LinkGeometry& g, double frequency, const SeaState& sea,
                           Polarization pol, const ReflectionOptions& options) {
  auto target = [&](const LinkGeometry& at) {
    return smooth_earth_diffraction_loss(at, frequency, sea, pol);
  };
  if (g.distance() < horizon_distance(g)) {
    try {
      const EffectiveReflection r = effective_reflection(g, frequency, sea, pol, options);
      return {two_ray_round_earth(g, frequency, r), diffraction_correction(g, frequency, target),
              false};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoSpecularPoint) throw;
    }
  }
  return {free_space_loss(g.distance(), frequency), target(g), true};
}

double rel_loss(const LinkGeometry& g, double frequency, const SeaState& sea, Polarization pol,
                const ReflectionOptions& options) {
  return rel_breakdown(g, frequency, sea, pol, options).total();
}

double itu_p2001_reduced_loss(const LinkGeometry& g, double frequency, const ItuParams& itu,
                              const SeaState& sea, Polarization pol) {
  if (frequency < 30e6 || frequency > 50e9) {
    fail(ErrorCode::FrequencyOutOfRange, "frequency outside 30 MHz - 50 GHz");
  }
  itu.validate();
  if (itu.time_percentage != 50.0) {
    fail(ErrorCode::NotImplemented, "only the median (T_pc = 50 %) path is computed");
  }
  EarthModel median = g.earth();
  median.effective_radius_factor = itu.median_effective_radius_factor;
  const LinkGeometry at_median = g.with_earth(median);
  return free_space_loss(g.distance(), frequency) +
         spherical_earth_diffraction_loss(at_median, frequency, sea, pol);
}

double log_distance_loss(double distance, const LogDistanceParams& p) {
  if (!(distance > 0.0)) fail(ErrorCode::InvalidArgument, "distance must be positive");
  return p.l_p0 + 10.0 * p.n * std::log10(distance / p.d_0);
}

}  // namespace sealoss
