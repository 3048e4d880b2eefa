#pragma once

// Exact geometry of the unit spheres Sigma_d centered on the axis point
// t = d of the radiating metric
//   -(1 - M(u)/r) du^2 - 2 du dr + r^2 dOmega^2,     M(u) = F(-u).
// In Cartesian-like coordinates (t, y) the sphere is y = center + X, |X| = 1,
// and everything reduces to functions of Z = cos(theta) through
//   r^2 = d^2 + 2 s d Z + s^2,   u = t - r,
// with s the sphere radius kept as an internal parameter (public surfaces
// have s = 1).  All s- and t-derivatives are analytic; only the latitude
// derivative inside the connection 1-form is taken spectrally.

#include "vqlm/massaspect.hpp"
#include "vqlm/s2grid.hpp"

#include <utility>

namespace vqlm {

// (r, u) at a point of the sphere of radius s about t = d.
// Requires d > 2, s in (0, 2], Z in [-1, 1].
std::pair<double, double> radius_u(double d, double Z, double s);

struct SurfaceGeometry {
    double d = 0.0;
    const LatitudeGrid* grid = nullptr;

    // Constant-t slice metric components at s = 1 (theta components carry
    // their explicit sin(theta) factors).
    ScalarField g_ss, g_stheta;
    // Induced metric on the sphere: sigma_theta = g_thetatheta,
    // sigma_phi = g_phiphi.
    ScalarField sigma_theta, sigma_phi;

    // Mean curvature of the sphere inside the slice.
    ScalarField hhat;
    // Extrinsic curvature of the slice in spacetime, and its sphere trace.
    ScalarField k_ss, k_stheta, k_thetatheta, k_phiphi;
    ScalarField trk;
    // Spacelike mean curvature norm |H| = sqrt(hhat^2 - trk^2).
    ScalarField h_norm;
    // Theta component of the mean-curvature connection 1-form.
    ScalarField alpha_theta;

    // sqrt(det sigma / det round) and the covariant divergence of the
    // radial-mixed metric row g(., s) on the sphere.
    ScalarField area_ratio;
    ScalarField div_gas;
};

// Requires d >= 10 so the spheres sit in the weak-field exterior.
// Throws on degenerate slice metric, nonpositive lapse, or a mean-curvature
// vector that fails to be spacelike.
SurfaceGeometry build_surface_geometry(const MassAspectProfile& p, double d,
                                       const LatitudeGrid& g);

// hhat + div_gas: the divergence-reduced mean curvature whose expansion
// coefficients the closed forms describe.
ScalarField reduced_mean_curvature(const SurfaceGeometry& geom);

} // namespace vqlm
