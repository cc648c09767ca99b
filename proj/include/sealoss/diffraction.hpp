#pragma once

#include <functional>

#include "sealoss/geometry.hpp"
#include "sealoss/sea_surface.hpp"

namespace sealoss {

/// Field strength relative to free space (dB, positive = gain) from the first
/// term of the residue series over a smooth sphere:
///   F(X) + G(Y_t) + G(Y_r)
/// in the normalized distance/height coordinates. The surface admittance K
/// and beta come from the sea's permittivity and conductivity.
double first_term_field_db(const LinkGeometry& g, double frequency, const SeaState& sea,
                           Polarization pol);

/// Excess loss over free space (dB) of the first residue-series term, floored
/// at 0 dB where the term predicts gain at short range.
double smooth_earth_diffraction_loss(const LinkGeometry& g, double frequency,
                                     const SeaState& sea = {},
                                     Polarization pol = Polarization::Vertical);

/// Loss of the sphere beyond that of a flat perfectly conducting plane
/// (R = -1), floored at 0 dB: the curvature term added to a flat-earth
/// two-ray prediction.
double curvature_loss(const LinkGeometry& g, double frequency, const SeaState& sea = {},
                      Polarization pol = Polarization::Vertical);

/// Spherical-earth diffraction over a smooth path including the line-of-sight
/// clearance interpolation (h_se / h_req against a modified radius).
double spherical_earth_diffraction_loss(const LinkGeometry& g, double frequency,
                                        const SeaState& sea = {},
                                        Polarization pol = Polarization::Vertical);

using DiffractionTarget = std::function<double(const LinkGeometry&)>;

/// Diffraction correction used by the flat/round two-ray models:
///   0 for d <= d60, target(d) for d >= d_h, and between the two the value
///   target(d_h) scaled linearly in log10(d) from 0 at d60.
double diffraction_correction(const LinkGeometry& g, double frequency,
                              const DiffractionTarget& target);

}  // namespace sealoss
