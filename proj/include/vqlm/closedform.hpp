#pragma once

// Closed-form large-d expansion coefficients for the unit-sphere family, all
// sampled on a latitude grid.  Every entry is an explicit polynomial in Z
// with F, F', F'', F''' evaluated at Z.  These are the oracles the numeric
// extraction is checked against.

#include "vqlm/massaspect.hpp"
#include "vqlm/s2grid.hpp"

namespace vqlm {

struct CoefficientSet {
    // sigma_ab = round metric + (f/d) Z_a Z_b + O(1/d^2); this is f.
    ScalarField sigma_m1;
    // Connection 1-form (alpha_H)_a = (g/d) Z_a + O(1/d^2); this is g.
    ScalarField alpha_m1;
    // Area ratio sqrt(det sigma / det round) = 1 + V1/d + V2/d^2 + ...
    ScalarField v_m1, v_m2;
    // Divergence-reduced slice mean curvature = 2 + B1/d + B2/d^2 + ...
    ScalarField bh_m1, bh_m2;
    // Leading 1/d coefficient of the shift divergence div gbar(., s).
    ScalarField div_m1;
    // Right-hand sides of the leading-order isometric embedding system:
    // -(Lap + 2) N = rhs_n,  Lap (Lap + 2) X0 = rhs_x.
    ScalarField rhs_n, rhs_x;
    // Reduced representative of v_m2 + bh_m2 + v_m1 * bh_m1: differs from it
    // by exact derivatives, so the sphere integrals agree.  Equals
    // -F Z + F^2 Z^2 (1 - Z^2) / 8.
    ScalarField combo;
};

CoefficientSet closed_forms(const MassAspectProfile& p, const LatitudeGrid& g);

} // namespace vqlm
