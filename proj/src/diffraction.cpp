#include "sealoss/diffraction.hpp"

#include <algorithm>
#include <cmath>

#include "sealoss/errors.hpp"
#include "sealoss/propagation.hpp"

namespace sealoss {

namespace {

struct SurfaceAdmittance {
  double k;
  double beta;
};

// f in MHz, a_e in km.
SurfaceAdmittance surface_admittance(double f_mhz, double ae_km, const SeaState& sea,
                                     Polarization pol) {
  const double er = sea.relative_permittivity;
  const double x = 18000.0 * sea.conductivity / f_mhz;
  const double kh = 0.36 * std::cbrt(1.0 / (ae_km * f_mhz)) *
                    std::pow((er - 1.0) * (er - 1.0) + x * x, -0.25);
  const double k = pol == Polarization::Horizontal ? kh : kh * std::sqrt(er * er + x * x);
  const double k2 = k * k;
  const double k4 = k2 * k2;
  return {k, (1.0 + 1.6 * k2 + 0.67 * k4) / (1.0 + 4.5 * k2 + 1.53 * k4)};
}

double distance_term(double x) {
  if (x >= 1.6) return 11.0 + 10.0 * std::log10(x) - 17.6 * x;
  return -20.0 * std::log10(x) - 5.6488 * std::pow(x, 1.425);
}

double height_gain(double y, const SurfaceAdmittance& s) {
  const double b = s.beta * y;
  double gain = b > 2.0 ? 17.6 * std::sqrt(b - 1.1) - 5.0 * std::log10(b - 1.1) - 8.0
                        : 20.0 * std::log10(b + 0.1 * b * b * b);
  return std::max(gain, 2.0 + 20.0 * std::log10(s.k));
}

double first_term_field(double d_m, double ht, double hr, double ae_m, double frequency,
                        const SeaState& sea, Polarization pol) {
  const double f_mhz = frequency / 1e6;
  const double ae_km = ae_m / 1000.0;
  const SurfaceAdmittance s = surface_admittance(f_mhz, ae_km, sea, pol);
  const double x = 2.188 * s.beta * std::cbrt(f_mhz) * std::pow(ae_km, -2.0 / 3.0) * (d_m / 1000.0);
  const double y_unit = 9.575e-3 * s.beta * std::pow(f_mhz, 2.0 / 3.0) * std::cbrt(1.0 / ae_km);
  return distance_term(x) + height_gain(y_unit * ht, s) + height_gain(y_unit * hr, s);
}

}  // namespace

double first_term_field_db(const LinkGeometry& g, double frequency, const SeaState& sea,
                           Polarization pol) {
  return first_term_field(g.distance(), g.tx_height(), g.rx_height(), g.effective_radius(),
                          frequency, sea, pol);
}

double smooth_earth_diffraction_loss(const LinkGeometry& g, double frequency, const SeaState& sea,
                                     Polarization pol) {
  return std::max(0.0, -first_term_field_db(g, frequency, sea, pol));
}

double curvature_loss(const LinkGeometry& g, double frequency, const SeaState& sea,
                      Polarization pol) {
  const double d = g.distance();
  const double sphere = free_space_loss(d, frequency) + smooth_earth_diffraction_loss(g, frequency, sea, pol);
  const double plane = two_ray_flat(d, g.tx_height(), g.rx_height(), frequency, -1.0);
  return std::max(0.0, sphere - plane);
}

double spherical_earth_diffraction_loss(const LinkGeometry& g, double frequency,
                                        const SeaState& sea, Polarization pol) {
  const double d_km = g.distance() / 1000.0;
  const double ae_km = g.effective_radius() / 1000.0;
  const double hte = g.tx_height();
  const double hre = g.rx_height();

  const double d_los = std::sqrt(2.0 * ae_km) * (std::sqrt(0.001 * hte) + std::sqrt(0.001 * hre));
  if (d_km >= d_los) return -first_term_field_db(g, frequency, sea, pol);

  // Point of minimum clearance of the direct ray above the smooth sphere.
  const double c = (hte - hre) / (hte + hre);
  const double m = 250.0 * d_km * d_km / (ae_km * (hte + hre));
  const double b = 2.0 * std::sqrt((m + 1.0) / (3.0 * m)) *
                   std::cos(kPi / 3.0 + std::acos(1.5 * c * std::sqrt(3.0 * m / std::pow(m + 1.0, 3.0))) / 3.0);
  const double d1 = 0.5 * d_km * (1.0 + b);
  const double d2 = d_km - d1;
  const double h_se =
      ((hte - 500.0 * d1 * d1 / ae_km) * d2 + (hre - 500.0 * d2 * d2 / ae_km) * d1) / d_km;
  const double h_req = 17.456 * std::sqrt(d1 * d2 * wavelength(frequency) / d_km);
  if (h_se > h_req) return 0.0;

  const double root_sum = std::sqrt(hte) + std::sqrt(hre);
  const double a_em_m = 500.0 * (d_km / root_sum) * (d_km / root_sum) * 1000.0;
  const double loss = -first_term_field(g.distance(), hte, hre, a_em_m, frequency, sea, pol);
  if (loss < 0.0) return 0.0;
  return (1.0 - h_se / h_req) * loss;
}

double diffraction_correction(const LinkGeometry& g, double frequency,
                              const DiffractionTarget& target) {
  const double d = g.distance();
  const double d60 = fresnel60_distance(g, frequency);
  const double dh = horizon_distance(g);
  if (d >= dh) return target(g);
  if (d <= d60) return 0.0;
  const double at_horizon = target(g.with_distance(dh));
  return at_horizon * std::log10(d / d60) / std::log10(dh / d60);
}

}  // namespace sealoss
