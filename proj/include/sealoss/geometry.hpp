#pragma once

#include "sealoss/units.hpp"

namespace sealoss {

/// Spherical earth. Geometry and diffraction use the effective radius
/// k * true_radius; GPS distances use the true radius.
struct EarthModel {
  double true_radius = kEarthRadius;
  double effective_radius_factor = 1.0;

  [[nodiscard]] double effective_radius() const { return effective_radius_factor * true_radius; }
  void validate() const;
};

struct GeoPoint {
  double latitude = 0.0;   // degrees, [-90, 90]
  double longitude = 0.0;  // degrees, [-180, 180]

  [[nodiscard]] bool valid() const;
  /// Throws InvalidArgument when out of range.
  static GeoPoint make(double latitude, double longitude);
};

/// Antenna heights above the sea surface and the great-circle distance between
/// the antenna feet.
class LinkGeometry {
 public:
  static constexpr double kMaxAntennaHeight = 10'000.0;

  LinkGeometry(double tx_height, double rx_height, double distance, EarthModel earth = {});

  [[nodiscard]] double tx_height() const { return tx_height_; }
  [[nodiscard]] double rx_height() const { return rx_height_; }
  [[nodiscard]] double distance() const { return distance_; }
  [[nodiscard]] const EarthModel& earth() const { return earth_; }
  [[nodiscard]] double effective_radius() const { return earth_.effective_radius(); }

  [[nodiscard]] LinkGeometry with_distance(double distance) const;
  [[nodiscard]] LinkGeometry with_earth(EarthModel earth) const;

 private:
  double tx_height_;
  double rx_height_;
  double distance_;
  EarthModel earth_;
};

/// Specular reflection on the sphere, in the tangent-plane construction.
struct ReflectionGeometry {
  double tx_arc;             // ground distance Tx foot -> reflection point (m)
  double rx_arc;             // ground distance reflection point -> Rx foot (m)
  double incident_path;      // slant length Tx antenna -> reflection point, x (m)
  double reflected_path;     // slant length reflection point -> Rx antenna, x' (m)
  double direct_path;        // direct ray length l (m)
  double tx_height_tangent;  // h_t' above the tangent plane (m)
  double rx_height_tangent;  // h_r' above the tangent plane (m)
  double grazing_angle;      // psi (rad)

  [[nodiscard]] double total_reflected_path() const { return incident_path + reflected_path; }
  [[nodiscard]] double path_difference() const { return total_reflected_path() - direct_path; }
};

/// Haversine distance over the true radius.
double great_circle_distance(GeoPoint a, GeoPoint b, const EarthModel& earth = {});

/// Point reached after travelling `distance` metres from `origin` along the
/// initial bearing (degrees clockwise from north) on the true sphere.
GeoPoint destination_point(GeoPoint origin, double bearing_deg, double distance,
                           const EarthModel& earth = {});

/// 4 h_t h_r / lambda.
double critical_distance(const LinkGeometry& g, double wavelength);

/// Distance at which the direct ray grazes the sphere, over the effective radius.
double horizon_distance(const LinkGeometry& g);

/// Great-circle distance (m) at which the first Fresnel zone is 60 % clear.
///
/// The closed form takes f in Hz and yields kilometres; the value is returned
/// in metres. A brute-force clearance sweep over the sphere reproduces it to
/// within ~5 % for the campaign geometries.
double fresnel60_distance(const LinkGeometry& g, double frequency);

/// Specular point from the cubic
///   2x^3 - 3dx^2 + (d^2 - 2 r_e (h_t + h_r)) x + 2 r_e h_t d = 0
/// on (0, d), solved with a bracketed Newton/bisection hybrid.
///
/// Throws NoSpecularPoint at or beyond the horizon and NumericalFailure if the
/// relative residual does not drop below 1e-10.
ReflectionGeometry reflection_geometry(const LinkGeometry& g);

}  // namespace sealoss
