#pragma once

// Loop quantity on latitude circles Z = c of the limit sphere: the deficit
// between the profile and a reference Schwarzschild mass, integrated over
// the polar cap above the circle.  The closed form depends on the boundary
// data only; the numeric route integrates the full cap integrand and must
// agree, which is the localization statement under test.

#include "vqlm/massaspect.hpp"
#include "vqlm/s2grid.hpp"

#include <utility>

namespace vqlm {

struct LoopInvariantSample {
    double c = 0.0;
    double numeric = 0.0;        // |signed_numeric|
    double closed = 0.0;         // (1/8)(1 - c^2) |c (F(c) - m_ref)|
    double signed_numeric = 0.0; // cap integral of the deficit integrand / 8 pi
};

// Cap integrand pieces as fields on the grid: the trace part of the metric
// deficit and the mean-curvature deficit.  Their sum is the total derivative
// -(1/2) d/dZ [ (F - m_ref) Z (1 - Z^2) ].
std::pair<ScalarField, ScalarField> delta_data(const MassAspectProfile& p,
                                               const LatitudeGrid& g);

// Requires |c| < 0.99 so the circle stays away from the poles.
LoopInvariantSample loop_invariant(const MassAspectProfile& p, double c,
                                   const LatitudeGrid& g);

} // namespace vqlm
