#pragma once

#include <cmath>
#include <numbers>

namespace sealoss {

inline constexpr double kSpeedOfLight = 299'792'458.0;           // m/s
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kEarthRadius = 6'371'000.0;              // m
inline constexpr double kPi = std::numbers::pi;

inline double wavelength(double frequency_hz) { return kSpeedOfLight / frequency_hz; }

inline double amplitude_to_db(double ratio) { return 20.0 * std::log10(ratio); }
inline double power_to_db(double ratio) { return 10.0 * std::log10(ratio); }

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace sealoss
