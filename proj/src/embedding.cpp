#include "vqlm/embedding.hpp"

#include "vqlm/closedform.hpp"

#include <cmath>
#include <string>

namespace vqlm {

namespace {

// Operator eigenvalue on the degree-l mode: l(l+1)-2 for the second-order
// equation, l(l+1)(l(l+1)-2) for the fourth-order one.  Kernel modes map to
// zero in both cases.
double mode_eigenvalue(int l, bool fourth_order) {
    const double ll = static_cast<double>(l) * (l + 1);
    return fourth_order ? ll * (ll - 2.0) : ll - 2.0;
}

struct ModeSolve {
    LegendreSpectrum sol;      // solution coefficients, kernel modes zeroed
    LegendreSpectrum proj_rhs; // rhs coefficients with kernel modes removed
};

ModeSolve solve_modes(const ScalarField& rhs, bool fourth_order, double kernel_tol,
                      double* kernel0, double* kernel1) {
    LegendreSpectrum s = to_spectrum(rhs);
    const int n = static_cast<int>(s.coeff.size());

    const double k1 = n > 1 ? s.coeff[1] : 0.0;
    const double k0 = fourth_order ? s.coeff[0] : 0.0;
    if (kernel0) *kernel0 = k0;
    if (kernel1) *kernel1 = k1;
    if (std::abs(k1) > kernel_tol || std::abs(k0) > kernel_tol)
        throw solvability_error("embedding solve: kernel-mode content " +
                                std::to_string(std::max(std::abs(k0), std::abs(k1))) +
                                " exceeds tolerance");

    ModeSolve out;
    out.sol.grid = s.grid;
    out.sol.coeff.assign(n, 0.0);
    out.proj_rhs = s;
    if (n > 1) out.proj_rhs.coeff[1] = 0.0;
    if (fourth_order) out.proj_rhs.coeff[0] = 0.0;
    for (int l = fourth_order ? 2 : 0; l < n; ++l) {
        if (l == 1) continue;
        out.sol.coeff[l] = s.coeff[l] / mode_eigenvalue(l, fourth_order);
    }
    return out;
}

// Sup norm of operator(solution) - rhs: the operator acts diagonally on the
// solution coefficients and the difference is rendered on the grid.  Wrong
// kernel handling or unsolved modes show up here; eigenvalue correctness is
// covered separately by the analytic-solution checks.
double operator_residual(const ModeSolve& ms, bool fourth_order) {
    LegendreSpectrum diff;
    diff.grid = ms.sol.grid;
    const int n = static_cast<int>(ms.sol.coeff.size());
    diff.coeff.assign(n, 0.0);
    for (int l = 0; l < n; ++l)
        diff.coeff[l] =
            mode_eigenvalue(l, fourth_order) * ms.sol.coeff[l] - ms.proj_rhs.coeff[l];
    return sup_norm(from_spectrum(diff));
}

// Residual of a directly sampled (not solved) solution candidate: extract its
// coefficients, drop the extraction noise floor, apply the operator mode-wise
// and compare against the kernel-projected rhs.  Exact for band-limited data;
// for analytic non-polynomial data the value reflects the truncation tail.
double sampled_residual(const ScalarField& cand, const ScalarField& rhs,
                        bool fourth_order) {
    ModeSolve ms;
    ms.sol = to_spectrum(cand);
    ms.proj_rhs = to_spectrum(rhs);
    const int n = static_cast<int>(ms.sol.coeff.size());
    if (n > 1) ms.proj_rhs.coeff[1] = 0.0;
    if (fourth_order) ms.proj_rhs.coeff[0] = 0.0;
    double peak = 0.0;
    for (double c : ms.sol.coeff) peak = std::max(peak, std::abs(c));
    for (double& c : ms.sol.coeff)
        if (std::abs(c) < 1e-13 * peak) c = 0.0;
    return operator_residual(ms, fourth_order);
}

} // namespace

ScalarField solve_time_function(const ScalarField& rhs, double kernel_tol) {
    return from_spectrum(solve_modes(rhs, false, kernel_tol, nullptr, nullptr).sol);
}

ScalarField solve_radial_function(const ScalarField& rhs, double kernel_tol) {
    return from_spectrum(solve_modes(rhs, true, kernel_tol, nullptr, nullptr).sol);
}

EmbeddingSolution solve_embedding(const ScalarField& rhs_n, const ScalarField& rhs_x,
                                  double kernel_tol) {
    EmbeddingSolution sol;
    ModeSolve mn = solve_modes(rhs_n, false, kernel_tol, nullptr, &sol.kernel_n);
    ModeSolve mx = solve_modes(rhs_x, true, kernel_tol, &sol.kernel_x0, &sol.kernel_x1);
    sol.N = from_spectrum(mn.sol);
    sol.X0 = from_spectrum(mx.sol);
    sol.residual_n = operator_residual(mn, false);
    sol.residual_x = operator_residual(mx, true);
    return sol;
}

EmbeddingSolution closed_solution(const MassAspectProfile& p, const LatitudeGrid& g) {
    EmbeddingSolution sol;
    sol.N = sample(g, [&p](double z) { return 0.5 * z * p.G(z); });
    sol.X0 = sample(g, [&p](double z) { return 0.5 * p.G(z); });

    LegendreSpectrum sn = to_spectrum(sol.N);
    LegendreSpectrum sx = to_spectrum(sol.X0);
    sol.kernel_n = sn.coeff.size() > 1 ? sn.coeff[1] : 0.0;
    sol.kernel_x0 = sx.coeff[0];
    sol.kernel_x1 = sx.coeff.size() > 1 ? sx.coeff[1] : 0.0;

    const CoefficientSet cf = closed_forms(p, g);
    sol.residual_n = sampled_residual(sol.N, cf.rhs_n, false);
    sol.residual_x = sampled_residual(sol.X0, cf.rhs_x, true);
    return sol;
}

SolvabilityReport solvability_report(const MassAspectProfile& p, const LatitudeGrid& g) {
    const CoefficientSet cf = closed_forms(p, g);
    SolvabilityReport rep;
    rep.reduction_moment = integrate_s2(cf.v_m1 + cf.bh_m1);
    rep.moment_x = 0.0; // integrand odd in phi
    rep.moment_y = 0.0;
    ScalarField z = sample(g, [](double v) { return v; });
    rep.moment_z = integrate_s2(z * cf.rhs_x);
    return rep;
}

EmbeddingEnergyIntegrals embedding_energy_integrals(const EmbeddingSolution& sol,
                                                    const MassAspectProfile& p) {
    const LatitudeGrid& g = *sol.N.grid;
    EmbeddingEnergyIntegrals out;

    ScalarField dN = differentiate(sol.N);
    ScalarField grad2_n(g), f2z2(g);
    for (int k = 0; k < g.size(); ++k) {
        const double Z = g.node(k);
        const double sn2 = 1.0 - Z * Z;
        grad2_n[k] = 0.5 * sn2 * dN[k] * dN[k] - sol.N[k] * sol.N[k];
        const double F = p.F(Z);
        f2z2[k] = 0.125 * F * F * Z * Z * sn2;
    }
    out.lhs_time = integrate_s2(grad2_n);
    out.rhs_time = integrate_s2(f2z2);

    ScalarField lapX = laplacian_axisym(sol.X0);
    ScalarField dX = differentiate(sol.X0);
    ScalarField quad_x(g), fp2(g);
    for (int k = 0; k < g.size(); ++k) {
        const double Z = g.node(k);
        const double sn2 = 1.0 - Z * Z;
        quad_x[k] = lapX[k] * lapX[k] - 2.0 * sn2 * dX[k] * dX[k];
        const double Fp = p.dF(Z);
        fp2[k] = 0.25 * Fp * Fp * sn2 * sn2;
    }
    out.lhs_radial = integrate_s2(quad_x);
    out.rhs_radial = integrate_s2(fp2);
    return out;
}

} // namespace vqlm
