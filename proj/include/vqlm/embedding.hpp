#pragma once

// Leading-order isometric embedding system on the round sphere:
//   -(Lap + 2) N = rhs_n        (time function)
//   Lap (Lap + 2) X0 = rhs_x    (radial perturbation)
// Lap has eigenvalue -l(l+1) on P_l, so l = 1 (and l = 0 for the fourth
// order operator) are kernel modes: solutions fix them to zero and the
// right-hand side must have no content there.

#include "vqlm/massaspect.hpp"
#include "vqlm/s2grid.hpp"

#include <stdexcept>

namespace vqlm {

class solvability_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EmbeddingSolution {
    ScalarField N, X0;
    // Kernel-mode content of the right-hand sides (dropped from the solve,
    // recorded here): l = 1 for N; l = 0, 1 for X0.
    double kernel_n = 0.0;
    double kernel_x0 = 0.0, kernel_x1 = 0.0;
    // Sup norm of operator(solution) minus the kernel-projected RHS.
    double residual_n = 0.0, residual_x = 0.0;
};

// kernel_tol bounds the acceptable kernel-mode coefficients of the RHS.
// The default suits right-hand sides assembled from analytic formulas;
// extraction-based right-hand sides carry fit noise and pass a looser value.
ScalarField solve_time_function(const ScalarField& rhs, double kernel_tol = 1e-8);
ScalarField solve_radial_function(const ScalarField& rhs, double kernel_tol = 1e-8);

EmbeddingSolution solve_embedding(const ScalarField& rhs_n, const ScalarField& rhs_x,
                                  double kernel_tol = 1e-8);

// Exact solution pair N = Z G(Z) / 2, X0 = G(Z) / 2 with G the profile
// antiderivative; satisfies the system for the profile's own right-hand
// sides up to kernel modes.
EmbeddingSolution closed_solution(const MassAspectProfile& p, const LatitudeGrid& g);

struct SolvabilityReport {
    // Sphere integral of v_m1 + bh_m1 (total-derivative structure).
    double reduction_moment = 0.0;
    // First-moment integrals of rhs_x against the three coordinate functions;
    // the x and y ones vanish identically by axisymmetry.
    double moment_x = 0.0, moment_y = 0.0, moment_z = 0.0;
};

SolvabilityReport solvability_report(const MassAspectProfile& p, const LatitudeGrid& g);

struct EmbeddingEnergyIntegrals {
    // integral of |grad N|^2 / 2 - N^2 versus its closed form
    // integral of F^2 Z^2 (1 - Z^2) / 8.
    double lhs_time = 0.0, rhs_time = 0.0;
    // integral of (Lap X0)^2 - 2 |grad X0|^2 versus
    // integral of (F')^2 (1 - Z^2)^2 / 4.
    double lhs_radial = 0.0, rhs_radial = 0.0;
};

EmbeddingEnergyIntegrals embedding_energy_integrals(const EmbeddingSolution& sol,
                                                    const MassAspectProfile& p);

} // namespace vqlm
