#include "sealoss/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sealoss/errors.hpp"

namespace sealoss {

using detail::fail;

void EarthModel::validate() const {
  if (!(true_radius > 0.0) || !std::isfinite(true_radius)) {
    fail(ErrorCode::InvalidArgument, "earth radius must be positive");
  }
  if (!(effective_radius_factor > 0.0) || !std::isfinite(effective_radius_factor)) {
    fail(ErrorCode::InvalidArgument, "effective radius factor must be positive");
  }
}

bool GeoPoint::valid() const {
  return std::isfinite(latitude) && std::isfinite(longitude) && latitude >= -90.0 &&
         latitude <= 90.0 && longitude >= -180.0 && longitude <= 180.0;
}

GeoPoint GeoPoint::make(double latitude, double longitude) {
  GeoPoint p{latitude, longitude};
  if (!p.valid()) fail(ErrorCode::InvalidArgument, "coordinates out of range");
  return p;
}

LinkGeometry::LinkGeometry(double tx_height, double rx_height, double distance, EarthModel earth)
    : tx_height_(tx_height), rx_height_(rx_height), distance_(distance), earth_(earth) {
  earth_.validate();
  if (!(tx_height > 0.0) || !(rx_height > 0.0)) {
    fail(ErrorCode::InvalidArgument, "antenna heights must be positive");
  }
  if (tx_height > kMaxAntennaHeight || rx_height > kMaxAntennaHeight) {
    fail(ErrorCode::InvalidArgument, "antenna height above 10 km");
  }
  if (!(distance > 0.0) || !std::isfinite(distance)) {
    fail(ErrorCode::InvalidArgument, "distance must be positive");
  }
}

LinkGeometry LinkGeometry::with_distance(double distance) const {
  return {tx_height_, rx_height_, distance, earth_};
}

LinkGeometry LinkGeometry::with_earth(EarthModel earth) const {
  return {tx_height_, rx_height_, distance_, earth};
}

double great_circle_distance(GeoPoint a, GeoPoint b, const EarthModel& earth) {
  const double phi1 = deg_to_rad(a.latitude);
  const double phi2 = deg_to_rad(b.latitude);
  const double dphi = phi2 - phi1;
  const double dlambda = deg_to_rad(b.longitude - a.longitude);
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = std::clamp(s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2, 0.0, 1.0);
  return 2.0 * earth.true_radius * std::asin(std::sqrt(h));
}

GeoPoint destination_point(GeoPoint origin, double bearing_deg, double distance,
                           const EarthModel& earth) {
  if (!origin.valid()) fail(ErrorCode::InvalidArgument, "invalid origin");
  if (!(distance >= 0.0)) fail(ErrorCode::InvalidArgument, "distance must be >= 0");
  const double delta = distance / earth.true_radius;
  const double theta = deg_to_rad(bearing_deg);
  const double phi1 = deg_to_rad(origin.latitude);
  const double phi2 = std::asin(std::clamp(
      std::sin(phi1) * std::cos(delta) + std::cos(phi1) * std::sin(delta) * std::cos(theta), -1.0,
      1.0));
  const double lambda = deg_to_rad(origin.longitude) +
                        std::atan2(std::sin(theta) * std::sin(delta) * std::cos(phi1),
                                   std::cos(delta) - std::sin(phi1) * std::sin(phi2));
  double lon = std::remainder(rad_to_deg(lambda), 360.0);
  if (lon == -180.0) lon = 180.0;
  return {rad_to_deg(phi2), lon};
}

double critical_distance(const LinkGeometry& g, double wavelength) {
  if (!(wavelength > 0.0)) fail(ErrorCode::InvalidArgument, "wavelength must be positive");
  return 4.0 * g.tx_height() * g.rx_height() / wavelength;
}

namespace {

// arccos(r / (r + h)) written as an arctangent; exact and free of the
// cancellation near 1 that arccos suffers for h << r.
double horizon_angle(double radius, double height) {
  return std::atan(std::sqrt(height * (2.0 * radius + height)) / radius);
}

}  // namespace

double horizon_distance(const LinkGeometry& g) {
  const double re = g.effective_radius();
  return re * (horizon_angle(re, g.tx_height()) + horizon_angle(re, g.rx_height()));
}

double fresnel60_distance(const LinkGeometry& g, double frequency) {
  if (!(frequency > 0.0)) fail(ErrorCode::InvalidArgument, "frequency must be positive");
  const double ht = g.tx_height();
  const double hr = g.rx_height();
  const double root_sum = std::sqrt(ht) + std::sqrt(hr);
  const double km = 1.5949e-10 * frequency * ht * hr * root_sum /
                    (3.89e-11 * frequency * ht * hr + 4.1 * root_sum);
  return km * 1000.0;
}

ReflectionGeometry reflection_geometry(const LinkGeometry& g) {
  const double d = g.distance();
  const double ht = g.tx_height();
  const double hr = g.rx_height();
  const double re = g.effective_radius();

  if (d >= horizon_distance(g)) {
    fail(ErrorCode::NoSpecularPoint, "distance at or beyond the radio horizon");
  }

  const double c1 = d * d - 2.0 * re * (ht + hr);
  const double c0 = 2.0 * re * ht * d;
  auto f = [&](double x) { return ((2.0 * x - 3.0 * d) * x + c1) * x + c0; };
  auto df = [&](double x) { return (6.0 * x - 6.0 * d) * x + c1; };
  const double scale = 2.0 * re * (ht + hr) * d;

  // f(0) = 2 r_e h_t d > 0 and f(d) = -2 r_e h_r d < 0 bracket a root.
  double lo = 0.0;
  double hi = d;
  double x = d * ht / (ht + hr);
  double fx = f(x);
  for (int iter = 0; iter < 200; ++iter) {
    if (fx > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (std::abs(fx) <= 1e-15 * scale || hi - lo <= 1e-15 * d) break;
    const double slope = df(x);
    double next = slope != 0.0 ? x - fx / slope : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
    fx = f(x);
  }
  if (!(std::abs(fx) < 1e-10 * scale)) {
    fail(ErrorCode::NumericalFailure,
         "reflection cubic did not converge (relative residual " +
             std::to_string(std::abs(fx) / scale) + ")");
  }

  ReflectionGeometry rg{};
  rg.tx_arc = x;
  rg.rx_arc = d - x;
  rg.tx_height_tangent = ht - x * x / (2.0 * re);
  rg.rx_height_tangent = hr - rg.rx_arc * rg.rx_arc / (2.0 * re);
  if (!(rg.tx_height_tangent > 0.0) || !(rg.rx_height_tangent > 0.0)) {
    fail(ErrorCode::NoSpecularPoint, "antenna below the tangent plane at the specular point");
  }
  rg.incident_path = std::hypot(rg.tx_arc, rg.tx_height_tangent);
  rg.reflected_path = std::hypot(rg.rx_arc, rg.rx_height_tangent);
  rg.direct_path = std::hypot(d, rg.rx_height_tangent - rg.tx_height_tangent);
  rg.grazing_angle = std::atan(rg.tx_height_tangent / rg.tx_arc);
  return rg;
}

}  // namespace sealoss
