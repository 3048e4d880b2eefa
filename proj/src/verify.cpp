#include "vqlm/verify.hpp"

#include "vqlm/closedform.hpp"
#include "vqlm/embedding.hpp"
#include "vqlm/energy.hpp"
#include "vqlm/loopinv.hpp"
#include "vqlm/massaspect.hpp"
#include "vqlm/s2grid.hpp"
#include "vqlm/seriesx.hpp"
#include "vqlm/vaidyageom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace vqlm {
namespace {

constexpr double kPi = std::numbers::pi;

// Portable uniform in [0,1): avoids std::uniform_real_distribution so the
// draws are identical on every standard library.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class Battery {
public:
    explicit Battery(const std::map<std::string, double>& overrides)
        : overrides_(overrides) {}

    void add(const std::string& name, int criterion, double value, double tol,
             const std::string& detail = "") {
        auto it = overrides_.find(name);
        if (it != overrides_.end()) tol = it->second;
        CheckResult r;
        r.name = name;
        r.criterion = criterion;
        r.value = value;
        r.tolerance = tol;
        r.pass = std::isfinite(value) && value <= tol;
        r.detail = detail;
        results_.push_back(std::move(r));
    }

    std::vector<CheckResult> take() { return std::move(results_); }

private:
    const std::map<std::string, double>& overrides_;
    std::vector<CheckResult> results_;
};

std::vector<MassAspectProfile> canonical_profiles() {
    return {minkowski_profile(), constant_profile(2.0),
            affine_profile(1.0, 0.5), tanh_step_profile(1.0, 0.5, 2.0),
            bump_profile(1.0, 0.5, 2.0)};
}

std::vector<MassAspectProfile> acceptance_profiles() {
    return {constant_profile(2.0), affine_profile(1.0, 0.5),
            tanh_step_profile(1.0, 0.5, 2.0)};
}

std::vector<double> acceptance_schedule() { return {250.0, 500.0, 1000.0, 2000.0}; }

// ---- grid -----------------------------------------------------------------

void check_grid(Battery& b, const LatitudeGrid& g) {
    const int n = g.size();

    int order_bad = 0;
    double wsum = 0.0;
    for (int k = 0; k < n; ++k) {
        double z = g.node(k);
        if (!(z > -1.0 && z < 1.0)) ++order_bad;
        if (k > 0 && !(z > g.node(k - 1))) ++order_bad;
        if (!(g.weight(k) > 0.0)) ++order_bad;
        wsum += g.weight(k);
    }
    b.add("grid.nodes_ascending", 8, order_bad, 0.5);
    b.add("grid.weight_sum", 8, std::fabs(wsum - 2.0), 1e-14);

    // Random polynomials up to degree 2n-1 integrate exactly.
    std::mt19937_64 rng(0x5eed0004ull);
    double worst_poly = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> c(2 * n);
        double scale = 0.0;
        double exact = 0.0;
        for (int k = 0; k < 2 * n; ++k) {
            c[k] = 2.0 * uniform01(rng) - 1.0;
            if (k % 2 == 0) exact += 2.0 * c[k] / (k + 1);
            scale += 2.0 * std::fabs(c[k]) / (k + 1);
        }
        exact *= 2.0 * kPi;
        scale *= 2.0 * kPi;
        double quad = 0.0;
        for (int k = 0; k < n; ++k) {
            double z = g.node(k);
            double p = 0.0;
            for (int j = 2 * n - 1; j >= 0; --j) p = p * z + c[j];
            quad += g.weight(k) * p;
        }
        quad *= 2.0 * kPi;
        worst_poly = std::max(worst_poly, std::fabs(quad - exact) / scale);
    }
    b.add("grid.quadrature_polynomials", 8, worst_poly, 1e-12);

    ScalarField one(g), zsq(g), mix(g);
    for (int k = 0; k < n; ++k) {
        double z = g.node(k);
        one.values[k] = 1.0;
        zsq.values[k] = z * z;
        mix.values[k] = 1.0 + 3.0 * z * z;
    }
    double m1 = std::fabs(integrate_s2(one) - 4.0 * kPi) / (4.0 * kPi);
    double m2 = std::fabs(integrate_s2(zsq) - 4.0 * kPi / 3.0) / (4.0 * kPi / 3.0);
    double m3 = std::fabs(integrate_s2(mix) - 8.0 * kPi) / (8.0 * kPi);
    b.add("grid.moment_values", 8, std::max({m1, m2, m3}), 1e-13);

    // Spectral round trip and low-mode coefficients.
    ScalarField th = sample(g, [](double z) { return std::tanh(2.0 * z); });
    ScalarField lin = sample(g, [](double z) { return z; });
    LegendreSpectrum sth = to_spectrum(th);
    LegendreSpectrum slin = to_spectrum(lin);
    LegendreSpectrum szq = to_spectrum(zsq);
    double rt = sup_diff(from_spectrum(sth), th);
    double coef_err = std::fabs(slin.coeff[1] - 1.0);
    coef_err = std::max(coef_err, std::fabs(slin.coeff[0]));
    coef_err = std::max(coef_err, std::fabs(szq.coeff[0] - 1.0 / 3.0));
    coef_err = std::max(coef_err, std::fabs(szq.coeff[2] - 2.0 / 3.0));
    b.add("grid.spectral_roundtrip", 8, std::max(rt, coef_err), 1e-10);

    // Differentiation against polynomial oracles.
    ScalarField cub = sample(g, [](double z) { return z * z * z; });
    ScalarField cub_d = sample(g, [](double z) { return 3.0 * z * z; });
    double dp = sup_diff(differentiate(cub), cub_d);
    ScalarField p5(g), p5d(g);
    for (int k = 0; k < n; ++k) {
        double z = g.node(k);
        p5.values[k] = legendre_p(5, z);
        // (1-z^2) P5' = 5 (P4 - z P5)
        p5d.values[k] = 5.0 * (legendre_p(4, z) - z * legendre_p(5, z)) /
                        (1.0 - z * z);
    }
    dp = std::max(dp, sup_diff(differentiate(p5), p5d));
    dp = std::max(dp, sup_norm(differentiate(one)));
    b.add("grid.derivative_polynomials", 8, dp, 1e-11);

    // Integral of a derivative over the sphere sees only the endpoints.
    ScalarField f = sample(g, [](double z) { return std::tanh(2.0 * z) + std::exp(-z); });
    double lhs = integrate_s2(differentiate(f));
    double rhs = 2.0 * kPi * ((std::tanh(2.0) + std::exp(-1.0)) -
                              (std::tanh(-2.0) + std::exp(1.0)));
    b.add("grid.derivative_identity", 8, std::fabs(lhs - rhs), 1e-9);

    // Axisymmetric Laplacian eigenmodes and self-adjointness.
    double eig = 0.0;
    for (int l = 0; l < n - 2; ++l) {
        ScalarField pl(g);
        for (int k = 0; k < n; ++k) pl.values[k] = g.legendre(l, k);
        ScalarField lap = laplacian_axisym(pl);
        double ev = -static_cast<double>(l) * (l + 1);
        for (int k = 0; k < n; ++k)
            eig = std::max(eig, std::fabs(lap.values[k] - ev * pl.values[k]));
    }
    b.add("grid.laplacian_eigenmodes", 8, eig, 1e-10);

    ScalarField u = sample(g, [](double z) { return std::tanh(2.0 * z); });
    ScalarField v = sample(g, [](double z) { return std::exp(z) * (1.0 - z * z); });
    double sa = std::fabs(integrate_s2(u * laplacian_axisym(v)) -
                          integrate_s2(v * laplacian_axisym(u)));
    b.add("grid.laplacian_selfadjoint", 8, sa, 1e-10);
}

// ---- profiles ---------------------------------------------------------------

void check_profiles(Battery& b, const std::vector<MassAspectProfile>& ps,
                    const LatitudeGrid& g) {
    const double h = 1e-5;
    double fd_worst = 0.0;
    double mass_worst = 0.0;
    std::string fd_detail;
    for (const auto& p : ps) {
        for (int i = 0; i <= 24; ++i) {
            double x = -1.5 + 3.0 * i / 24.0;
            double d1 = (p.F(x + h) - p.F(x - h)) / (2.0 * h);
            double d2 = (p.dF(x + h) - p.dF(x - h)) / (2.0 * h);
            double d3 = (p.d2F(x + h) - p.d2F(x - h)) / (2.0 * h);
            double e = std::fabs(p.dF(x) - d1) / (1.0 + std::fabs(p.dF(x)));
            e = std::max(e, std::fabs(p.d2F(x) - d2) / (1.0 + std::fabs(p.d2F(x))));
            e = std::max(e, std::fabs(p.d3F(x) - d3) / (1.0 + std::fabs(p.d3F(x))));
            if (e > fd_worst) {
                fd_worst = e;
                fd_detail = p.label;
            }

            double u = x;
            double md = (mass_function(p, u + h) - mass_function(p, u - h)) / (2.0 * h);
            mass_worst = std::max(mass_worst, std::fabs(md + p.dF(-u)));
        }
    }
    b.add("profile.derivative_fd", 0, fd_worst, 1e-6, fd_detail);
    b.add("profile.mass_retardation_fd", 0, mass_worst, 1e-7);

    double g_worst = 0.0;
    double anti_worst = 0.0;
    for (const auto& p : ps) {
        g_worst = std::max(g_worst, std::fabs(p.G(0.0)));
        ScalarField gs = sample(g, p.G);
        ScalarField fs = sample(g, p.F);
        g_worst = std::max(g_worst, sup_diff(differentiate(gs), fs));

        ScalarField dfs = sample(g, p.dF);
        LegendreSpectrum anti = antiderivative(to_spectrum(dfs));
        double shift = p.F(0.0) - evaluate(anti, 0.0);
        ScalarField rec = from_spectrum(anti);
        for (double& val : rec.values) val += shift;
        anti_worst = std::max(anti_worst, sup_diff(rec, fs));
    }
    b.add("profile.primitive_consistency", 0, g_worst, 1e-9);
    b.add("profile.integrate_derivative", 0, anti_worst, 1e-9);

    struct DecCase {
        MassAspectProfile p;
        bool expect;
    };
    std::vector<DecCase> cases = {
        {minkowski_profile(), true},
        {constant_profile(2.0), true},
        {affine_profile(1.0, 0.5), true},
        {affine_profile(1.0, -0.5), false},
        {tanh_step_profile(1.0, 0.5, 2.0), true},
        {tanh_step_profile(1.0, -0.5, 2.0), false},
        {bump_profile(1.0, 0.5, 2.0), false},
        {bump_profile(1.0, -0.5, 2.0), false},
    };
    int dec_bad = 0;
    for (const auto& c : cases)
        if (dec_satisfied(c.p) != c.expect) ++dec_bad;
    b.add("profile.dec_flags", 0, dec_bad, 0.5);

    double parse_worst = 0.0;
    for (const auto& p : ps) {
        MassAspectProfile q = parse_profile(p.label);
        for (double x : {-1.2, -0.3, 0.0, 0.7, 1.4}) {
            parse_worst = std::max(parse_worst, std::fabs(q.F(x) - p.F(x)));
            parse_worst = std::max(parse_worst, std::fabs(q.dF(x) - p.dF(x)));
        }
        parse_worst = std::max(parse_worst, std::fabs(q.m_ref - p.m_ref));
        parse_worst = std::max(parse_worst, q.label == p.label ? 0.0 : 1.0);
    }
    b.add("profile.parse_roundtrip", 0, parse_worst, 1e-15);

    const char* bad_inputs[] = {
        "unknown",
        "constant",
        "constant:m0=2,zz=1",
        "affine:m0=1",
        "affine:m0=1,a=0.5,a=0.5",
        "tanh_step:m0=1,a=0.5,lambda=-2",
        "constant:m0=abc",
        "bump:m0=1,a=1,lambda=2,mref=-1",
    };
    int accepted = 0;
    for (const char* s : bad_inputs) {
        try {
            parse_profile(s);
            ++accepted;
        } catch (const std::invalid_argument&) {
        }
    }
    b.add("profile.parse_rejects", 0, accepted, 0.5);
}

// ---- surface geometry -------------------------------------------------------

void check_geometry(Battery& b, const std::vector<MassAspectProfile>& ps,
                    const LatitudeGrid& g) {
    auto [r_pole, u_pole] = radius_u(100.0, 1.0, 1.0);
    double r_err = std::max(std::fabs(r_pole - 101.0), std::fabs(u_pole + 1.0));
    auto [r_eq, u_eq] = radius_u(100.0, 0.0, 1.0);
    r_err = std::max(r_err, std::fabs(r_eq - std::sqrt(10001.0)));
    r_err = std::max(r_err, std::fabs(u_eq - (100.0 - r_eq)));
    b.add("geometry.radius_values", 0, r_err, 1e-12);

    MassAspectProfile mink = minkowski_profile();
    double flat = 0.0;
    for (double d : {10.0, 100.0, 1000.0}) {
        SurfaceGeometry s = build_surface_geometry(mink, d, g);
        flat = std::max(flat, sup_norm(s.g_stheta));
        flat = std::max(flat, sup_norm(s.trk));
        flat = std::max(flat, sup_norm(s.alpha_theta));
        flat = std::max(flat, sup_norm(s.div_gas));
        flat = std::max(flat, sup_norm(s.k_ss));
        flat = std::max(flat, sup_norm(s.k_stheta));
        flat = std::max(flat, sup_norm(s.k_thetatheta));
        flat = std::max(flat, sup_norm(s.k_phiphi));
        for (int k = 0; k < g.size(); ++k) {
            double z = g.node(k);
            flat = std::max(flat, std::fabs(s.g_ss.values[k] - 1.0));
            flat = std::max(flat, std::fabs(s.sigma_theta.values[k] - 1.0));
            flat = std::max(flat, std::fabs(s.sigma_phi.values[k] - (1.0 - z * z)));
            flat = std::max(flat, std::fabs(s.hhat.values[k] - 2.0));
            flat = std::max(flat, std::fabs(s.h_norm.values[k] - 2.0));
            flat = std::max(flat, std::fabs(s.area_ratio.values[k] - 1.0));
        }
    }
    b.add("geometry.minkowski_flat", 0, flat, 1e-12);

    // Metric entries against a direct recomputation from the radius map.
    MassAspectProfile c2 = constant_profile(2.0);
    {
        double d = 100.0;
        SurfaceGeometry s = build_surface_geometry(c2, d, g);
        double worst = 0.0;
        for (int k = 0; k < g.size(); ++k) {
            double z = g.node(k);
            auto [r, u] = radius_u(d, z, 1.0);
            double mh = mass_function(c2, u) / r;
            double pp = (d * z + 1.0) / r;
            double q = d / r;
            double sinth = std::sqrt(1.0 - z * z);
            worst = std::max(worst, std::fabs(s.g_ss.values[k] - (1.0 + mh * pp * pp)));
            worst = std::max(worst, std::fabs(s.g_stheta.values[k] + mh * pp * q * sinth));
            worst = std::max(worst,
                             std::fabs(s.sigma_theta.values[k] -
                                       (1.0 + mh * q * q * (1.0 - z * z))));
            worst = std::max(worst,
                             std::fabs(s.sigma_phi.values[k] - (1.0 - z * z)));
        }
        b.add("geometry.metric_entries", 0, worst, 1e-14);
    }

    double div_worst = 0.0;
    std::string div_detail;
    for (const auto& p : ps) {
        for (double d : acceptance_schedule()) {
            SurfaceGeometry s = build_surface_geometry(p, d, g);
            double iv = integrate_s2(s.div_gas * s.area_ratio);
            if (std::fabs(iv) > div_worst) {
                div_worst = std::fabs(iv);
                div_detail = p.label;
            }
        }
    }
    b.add("geometry.divergence_integral", 8, div_worst, 1e-10, div_detail);

    MassAspectProfile th = tanh_step_profile(1.0, 0.5, 2.0);
    double ar_scaled = 0.0;
    for (double d : {100.0, 1000.0}) {
        SurfaceGeometry s = build_surface_geometry(th, d, g);
        double dev = 0.0;
        for (double v : s.area_ratio.values) dev = std::max(dev, std::fabs(v - 1.0));
        ar_scaled = std::max(ar_scaled, dev * d);
    }
    b.add("geometry.area_ratio_decay", 0, ar_scaled, 1.0);

    // trk vanishes for a constant profile; |H| folds onto the reduced
    // curvature once the correction is below roundoff.
    {
        std::vector<std::pair<double, ScalarField>> fits;
        for (double d : acceptance_schedule()) {
            SurfaceGeometry s = build_surface_geometry(c2, d, g);
            fits.emplace_back(d, s.trk);
        }
        ExpansionTriple t = richardson_fit(fits);
        b.add("geometry.trk_constant_a1", 0, sup_norm(t.a1), 1e-6);

        SurfaceGeometry far = build_surface_geometry(c2, 1e4, g);
        b.add("geometry.hnorm_constant_far", 0, sup_diff(far.h_norm, far.hhat), 1e-10);
    }

    {
        MassAspectProfile aff = affine_profile(1.0, 0.5);
        std::vector<std::pair<double, ScalarField>> trk_fits, gap_fits;
        for (double d : acceptance_schedule()) {
            SurfaceGeometry s = build_surface_geometry(aff, d, g);
            trk_fits.emplace_back(d, s.trk);
            gap_fits.emplace_back(d, s.hhat - s.h_norm);
        }
        ExpansionTriple t = richardson_fit(trk_fits);
        ScalarField trk_a1 = sample(g, [](double z) { return 0.25 * (1.0 - z * z); });
        b.add("geometry.trk_affine_a1", 0, sup_diff(t.a1, trk_a1), 1e-3);

        ExpansionTriple u = richardson_fit(gap_fits);
        ScalarField gap = sample(g, [](double z) {
            double w = 1.0 - z * z;
            return w * w / 64.0;
        });
        b.add("geometry.hnorm_gap_a2", 0, sup_diff(u.a2, gap), 0.02 / 64.0);
    }
}

// ---- closed forms -----------------------------------------------------------

void check_closedform(Battery& b, const std::vector<MassAspectProfile>& ps,
                      const LatitudeGrid& g) {
    double pt = 0.0;
    {
        CoefficientSet mk = closed_forms(minkowski_profile(), g);
        for (const ScalarField* f :
             {&mk.sigma_m1, &mk.alpha_m1, &mk.rhs_n, &mk.rhs_x, &mk.v_m1, &mk.v_m2,
              &mk.bh_m1, &mk.bh_m2, &mk.div_m1, &mk.combo})
            pt = std::max(pt, sup_norm(*f));

        CoefficientSet c2 = closed_forms(constant_profile(2.0), g);
        pt = std::max(pt, std::fabs(evaluate(to_spectrum(c2.sigma_m1), 0.3) - 2.0));
        pt = std::max(pt, sup_norm(c2.alpha_m1));
        pt = std::max(pt, std::fabs(evaluate(to_spectrum(c2.v_m1), 0.0) - 1.0));
        pt = std::max(pt, std::fabs(evaluate(to_spectrum(c2.v_m2), 0.0) + 0.5));
        pt = std::max(pt, std::fabs(evaluate(to_spectrum(c2.bh_m1), 1.0) + 2.0));
        pt = std::max(pt, std::fabs(evaluate(to_spectrum(c2.bh_m2), 1.0) - 1.0));
        pt = std::max(pt, std::fabs(evaluate(to_spectrum(c2.div_m1), 1.0) + 4.0));
        pt = std::max(pt, std::fabs(evaluate(to_spectrum(c2.combo), 0.5) + 0.90625));

        CoefficientSet af = closed_forms(affine_profile(1.0, 0.5), g);
        pt = std::max(pt, std::fabs(evaluate(to_spectrum(af.sigma_m1), 0.5) - 1.25));
        pt = std::max(pt, std::fabs(evaluate(to_spectrum(af.alpha_m1), 0.5) + 0.25));
        pt = std::max(pt, std::fabs(evaluate(to_spectrum(af.rhs_n), 0.0) + 1.0));
        pt = std::max(pt, std::fabs(evaluate(to_spectrum(af.rhs_x), 0.0) + 1.0));
    }
    b.add("closedform.point_values", 0, pt, 1e-12);

    double red = 0.0, divs = 0.0, divi = 0.0, ker = 0.0, split = 0.0;
    std::string red_detail;
    for (const auto& p : ps) {
        CoefficientSet c = closed_forms(p, g);
        double full = integrate_s2(c.v_m2 + c.bh_m2 + c.v_m1 * c.bh_m1);
        double reduced = integrate_s2(c.combo);
        double scale = std::max({1.0, std::fabs(full), std::fabs(reduced)});
        double e = std::fabs(full - reduced) / scale;
        if (e > red) {
            red = e;
            red_detail = p.label;
        }

        // div_m1 doubles v_m1 + bh_m1 pointwise and is an exact derivative.
        ScalarField twice = 2.0 * (c.v_m1 + c.bh_m1);
        split = std::max(split, sup_diff(twice, c.div_m1));
        ScalarField prim = sample(g, [&p](double z) {
            return p.F(z) * z * (1.0 - z * z);
        });
        divs = std::max(divs, sup_diff(differentiate(prim), c.div_m1));
        divi = std::max(divi, std::fabs(integrate_s2(c.div_m1)));

        LegendreSpectrum sx = to_spectrum(c.rhs_x);
        ker = std::max(ker, std::fabs(sx.coeff[0]));
        ker = std::max(ker, std::fabs(sx.coeff[1]));
    }
    b.add("closedform.reduction_identity", 0, red, 1e-12, red_detail);
    b.add("closedform.divergence_split", 0, split, 1e-12);
    b.add("closedform.divergence_spectral", 0, divs, 1e-10);
    b.add("closedform.divergence_integral", 0, divi, 1e-12);
    b.add("closedform.radial_rhs_kernel", 0, ker, 1e-12);
}

// ---- series extraction ------------------------------------------------------

void check_seriesx(Battery& b, const LatitudeGrid& g) {
    auto synth = [&g](const std::vector<double>& coef, const std::vector<double>& ds) {
        std::vector<std::pair<double, ScalarField>> out;
        for (double d : ds) {
            ScalarField f(g);
            for (int k = 0; k < g.size(); ++k) {
                double z = g.node(k);
                double acc = 0.0;
                double pw = 1.0;
                for (size_t j = 0; j < coef.size(); ++j) {
                    acc += coef[j] * pw * (1.0 + 0.1 * j * z);
                    pw /= d;
                }
                f.values[k] = acc;
            }
            out.emplace_back(d, f);
        }
        return out;
    };

    {
        auto data = synth({3.0, 5.0, 7.0}, {100.0, 200.0, 400.0, 800.0});
        ExpansionTriple t = richardson_fit(data);
        // Relative per coefficient: sample rounding alone maps to ~5e-10
        // absolute in a2 after the dmin^2 rescaling, so absolute comparison
        // would test the data, not the fit.
        double e = 0.0;
        for (int k = 0; k < g.size(); ++k) {
            double z = g.node(k);
            e = std::max(e, std::fabs(t.a0.values[k] - 3.0) / 3.0);
            e = std::max(e, std::fabs(t.a1.values[k] - 5.0 * (1.0 + 0.1 * z)) / 5.5);
            e = std::max(e, std::fabs(t.a2.values[k] - 7.0 * (1.0 + 0.2 * z)) / 8.4);
        }
        b.add("seriesx.exact_recovery", 0, e, 1e-10);
    }

    {
        // Dropping the cubic nuisance term costs at most |a3|/min(d)^3, which
        // is exactly the reported residual, at every sampled d.
        std::vector<double> ds{100.0, 200.0, 400.0, 800.0};
        auto data = synth({3.0, 5.0, 7.0, 2.0}, ds);
        ExpansionTriple t = richardson_fit(data);
        double gap = 0.0;
        for (size_t i = 0; i < ds.size(); ++i) {
            double d = ds[i];
            for (int k = 0; k < g.size(); ++k) {
                double model = t.a0.values[k] + t.a1.values[k] / d +
                               t.a2.values[k] / (d * d);
                gap = std::max(gap, std::fabs(model - data[i].second.values[k]) -
                                        t.residual.values[k]);
            }
        }
        b.add("seriesx.sample_reproduction", 0, gap, 1e-12);
    }

    {
        std::vector<std::pair<double, ScalarField>> data;
        for (double d : {100.0, 200.0, 400.0, 800.0}) {
            ScalarField f(g);
            for (int k = 0; k < g.size(); ++k) f.values[k] = 1.0 / (d * d * d);
            data.emplace_back(d, f);
        }
        ExpansionTriple t = richardson_fit(data);
        double e = std::max({sup_norm(t.a0), sup_norm(t.a1), sup_norm(t.a2)});
        b.add("seriesx.nuisance_capture", 0, e, 1e-8);
    }

    {
        std::mt19937_64 rng(0x5eed0003ull);
        double worst = -1.0;
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> coef(5);
            for (double& c : coef) c = 2.0 * uniform01(rng) - 1.0;
            std::vector<double> base = acceptance_schedule();
            std::vector<double> fine = base;
            fine.push_back(4000.0);
            auto fit_err = [&](const std::vector<double>& ds) {
                ExpansionTriple t = richardson_fit(synth(coef, ds));
                double e = 0.0;
                for (int k = 0; k < g.size(); ++k) {
                    double z = g.node(k);
                    e = std::max(e, std::fabs(t.a2.values[k] - coef[2] * (1.0 + 0.2 * z)));
                }
                return e;
            };
            worst = std::max(worst, fit_err(fine) - fit_err(base));
        }
        b.add("seriesx.monotone_refinement", 0, worst, 1e-12);
    }

    {
        int accepted = 0;
        ScalarField f(g);
        try {
            richardson_fit({{100.0, f}, {200.0, f}});
            ++accepted;
        } catch (const std::invalid_argument&) {
        }
        try {
            richardson_fit({{100.0, f}, {100.0, f}, {200.0, f}, {400.0, f}});
            ++accepted;
        } catch (const std::invalid_argument&) {
        }
        b.add("seriesx.input_validation", 0, accepted, 0.5);
    }
}

// ---- coefficient extraction (criterion 1) -----------------------------------

struct ProfileFits {
    MassAspectProfile p;
    CoefficientSet closed;
    ExpansionTriple sigma, area, bh, alpha, div;
};

ProfileFits fit_profile(const MassAspectProfile& p, const LatitudeGrid& g) {
    ProfileFits out{p, closed_forms(p, g), {}, {}, {}, {}, {}};
    std::vector<std::pair<double, ScalarField>> sig, area, bh, alp, dv;
    for (double d : acceptance_schedule()) {
        SurfaceGeometry s = build_surface_geometry(p, d, g);
        sig.emplace_back(d, s.sigma_theta);
        area.emplace_back(d, s.area_ratio);
        bh.emplace_back(d, reduced_mean_curvature(s));
        alp.emplace_back(d, s.alpha_theta);
        dv.emplace_back(d, s.div_gas);
    }
    out.sigma = richardson_fit(sig);
    out.area = richardson_fit(area);
    out.bh = richardson_fit(bh);
    out.alpha = richardson_fit(alp);
    out.div = richardson_fit(dv);
    return out;
}

void check_coefficients(Battery& b, const std::vector<ProfileFits>& fits,
                        const LatitudeGrid& g) {
    double sig = 0.0, area1 = 0.0, area2 = 0.0, bh1 = 0.0, bh2 = 0.0;
    double alp = 0.0, dv = 0.0;
    std::string worst;
    for (const auto& f : fits) {
        ScalarField sig_target(*f.sigma.a1.grid);
        for (int k = 0; k < g.size(); ++k) {
            double z = g.node(k);
            sig_target.values[k] = f.p.F(z) * (1.0 - z * z);
        }
        double e = sup_diff(f.sigma.a1, sig_target);
        if (e > sig) {
            sig = e;
            worst = f.p.label;
        }
        area1 = std::max(area1, sup_diff(f.area.a1, f.closed.v_m1));
        area2 = std::max(area2, sup_diff(f.area.a2, f.closed.v_m2) /
                                    sup_norm(f.closed.v_m2));
        bh1 = std::max(bh1, sup_diff(f.bh.a1, f.closed.bh_m1));
        bh2 = std::max(bh2, sup_diff(f.bh.a2, f.closed.bh_m2) /
                                sup_norm(f.closed.bh_m2));

        ScalarField alpha_target(*f.alpha.a1.grid);
        for (int k = 0; k < g.size(); ++k) {
            double z = g.node(k);
            alpha_target.values[k] =
                -std::sqrt(1.0 - z * z) * f.closed.alpha_m1.values[k];
        }
        alp = std::max(alp, sup_diff(f.alpha.a1, alpha_target));
        dv = std::max(dv, sup_diff(f.div.a1, f.closed.div_m1));
    }
    b.add("coeff.sigma_a1", 1, sig, 1e-4, worst);
    b.add("coeff.area_a1", 1, area1, 1e-4);
    b.add("coeff.area_a2_rel", 1, area2, 0.01);
    b.add("coeff.curvature_a1", 1, bh1, 1e-4);
    b.add("coeff.curvature_a2_rel", 1, bh2, 0.01);
    b.add("coeff.alpha_a1", 1, alp, 1e-4);
    b.add("coeff.divergence_a1", 1, dv, 1e-4);
}

// ---- embedding (criteria 2, 3, 6) -------------------------------------------

ScalarField project_high(const ScalarField& f, int lmin) {
    LegendreSpectrum s = to_spectrum(f);
    for (int l = 0; l < lmin && l < static_cast<int>(s.coeff.size()); ++l)
        s.coeff[l] = 0.0;
    return from_spectrum(s);
}

void check_embedding(Battery& b, const std::vector<MassAspectProfile>& ps,
                     const LatitudeGrid& g) {
    double eig = 0.0;
    {
        ScalarField p2(g), z2(g);
        for (int k = 0; k < g.size(); ++k) {
            p2.values[k] = g.legendre(2, k);
            double z = g.node(k);
            z2.values[k] = z * z;
        }
        ScalarField n1 = solve_time_function(p2);
        eig = std::max(eig, sup_diff(n1, 0.25 * p2));
        ScalarField x1 = solve_radial_function(24.0 * p2);
        eig = std::max(eig, sup_diff(x1, p2));

        // Constant profile: the time rhs solves back to Z^2 including l=0.
        CoefficientSet c2 = closed_forms(constant_profile(2.0), g);
        ScalarField n2 = solve_time_function(c2.rhs_n);
        eig = std::max(eig, sup_diff(n2, z2));
    }
    b.add("embed.eigenmode_solutions", 0, eig, 1e-12);

    {
        int accepted = 0;
        ScalarField z(g), one(g);
        for (int k = 0; k < g.size(); ++k) {
            z.values[k] = g.node(k);
            one.values[k] = 1.0;
        }
        try {
            solve_time_function(z);
            ++accepted;
        } catch (const solvability_error&) {
        }
        try {
            solve_radial_function(one);
            ++accepted;
        } catch (const solvability_error&) {
        }
        b.add("embed.kernel_rejection", 0, accepted, 0.5);
    }

    double match = 0.0, res = 0.0, ident = 0.0, mom = 0.0;
    std::string match_detail;
    for (const auto& p : ps) {
        CoefficientSet c = closed_forms(p, g);
        EmbeddingSolution num = solve_embedding(c.rhs_n, c.rhs_x);
        EmbeddingSolution ref = closed_solution(p, g);

        // Time functions may differ in the gauged l=1 mode only; radial ones
        // in l <= 1.
        double en;
        {
            LegendreSpectrum s = to_spectrum(num.N - ref.N);
            s.coeff[1] = 0.0;
            en = sup_norm(from_spectrum(s));
        }
        double ex = sup_diff(project_high(num.X0, 2), project_high(ref.X0, 2));
        double e = std::max(en, ex);
        if (e > match) {
            match = e;
            match_detail = p.label;
        }

        res = std::max({res, num.residual_n, num.residual_x});

        SolvabilityReport rep = solvability_report(p, g);
        mom = std::max({mom, std::fabs(rep.reduction_moment),
                        std::fabs(rep.moment_x), std::fabs(rep.moment_y),
                        std::fabs(rep.moment_z)});

        EmbeddingEnergyIntegrals ei = embedding_energy_integrals(ref, p);
        ident = std::max(ident, std::fabs(ei.lhs_time - ei.rhs_time));
        ident = std::max(ident, std::fabs(ei.lhs_radial - ei.rhs_radial));
        EmbeddingEnergyIntegrals en2 = embedding_energy_integrals(num, p);
        ident = std::max(ident, std::fabs(en2.lhs_radial - en2.rhs_radial));
    }
    b.add("embed.solver_matches_closed", 2, match, 1e-8, match_detail);
    b.add("embed.residuals", 2, res, 1e-9);

    {
        // Sampled closed solutions satisfy the equations too when the data is
        // band-limited (polynomial profiles).
        double sres = 0.0;
        for (const auto& p : {constant_profile(2.0), affine_profile(1.0, 0.5)}) {
            EmbeddingSolution ref = closed_solution(p, g);
            sres = std::max({sres, ref.residual_n, ref.residual_x});
        }
        b.add("embed.closed_residual_bandlimited", 0, sres, 1e-10);
    }
    b.add("embed.integral_identities", 3, ident, 1e-9);
    b.add("embed.solvability_moments", 6, mom, 1e-10);

    {
        // Reference value for the constant profile.
        EmbeddingSolution ref = closed_solution(constant_profile(2.0), g);
        EmbeddingEnergyIntegrals ei =
            embedding_energy_integrals(ref, constant_profile(2.0));
        double target = 4.0 * kPi / 15.0;
        double e = std::fabs(ei.lhs_time - target);
        e = std::max(e, std::fabs(ei.rhs_time - target));
        e = std::max(e, std::fabs(ei.lhs_radial));
        e = std::max(e, std::fabs(ei.rhs_radial));
        b.add("embed.reference_value", 3, e, 1e-10);
    }

    {
        // Kernel shifts leave the energy expression untouched.
        MassAspectProfile p = tanh_step_profile(1.0, 0.5, 2.0);
        CoefficientSet c = closed_forms(p, g);
        EmbeddingSolution base = solve_embedding(c.rhs_n, c.rhs_x);
        auto expr = [&](const ScalarField& N, const ScalarField& X0) {
            ScalarField lap = laplacian_axisym(X0);
            ScalarField lap2 = laplacian_axisym(lap) + 2.0 * lap;
            ScalarField dn = differentiate(N);
            ScalarField integrand(g);
            for (int k = 0; k < g.size(); ++k) {
                double z = g.node(k);
                double grad = (1.0 - z * z) * dn.values[k] * dn.values[k];
                integrand.values[k] = 0.5 * grad -
                                      N.values[k] * N.values[k] -
                                      0.25 * X0.values[k] * lap2.values[k];
            }
            return integrate_s2(integrand);
        };
        double base_val = expr(base.N, base.X0);
        std::mt19937_64 rng(0x5eed0001ull);
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            double c0 = 2.0 * uniform01(rng) - 1.0;
            double c1 = 2.0 * uniform01(rng) - 1.0;
            double c1n = 2.0 * uniform01(rng) - 1.0;
            ScalarField n2 = base.N, x2 = base.X0;
            for (int k = 0; k < g.size(); ++k) {
                double z = g.node(k);
                n2.values[k] += c1n * z;
                x2.values[k] += c0 + c1 * z;
            }
            worst = std::max(worst, std::fabs(expr(n2, x2) - base_val));
        }
        b.add("embed.gauge_invariance", 2, worst, 1e-10);
    }
}

// ---- energy (criteria 4, 5) -------------------------------------------------

void check_energy(Battery& b, const std::vector<MassAspectProfile>& ps,
                  const LatitudeGrid& g) {
    double route = 0.0;
    std::string route_detail;
    for (const auto& p : ps) {
        double d = 100.0;
        double lc = energy_closed(p, d, g) * d * d;
        double lr = energy_reduced(p, d, g) * d * d;
        double e = std::fabs(lr - lc) / std::max(1.0, std::fabs(lc));
        if (e > route) {
            route = e;
            route_detail = p.label;
        }
    }
    b.add("energy.route_equivalence", 4, route, 1e-12, route_detail);

    {
        MassAspectProfile aff = affine_profile(1.0, 0.5);
        double e1 = energy_closed(aff, 100.0, g);
        double e2 = energy_closed(aff, 200.0, g);
        b.add("energy.quadratic_scaling", 0, std::fabs(4.0 * e2 - e1) / std::fabs(e1),
              1e-15);
        b.add("energy.affine_leading", 4,
              std::fabs(e1 * 100.0 * 100.0 - 1.0 / 12.0), 1e-12);
    }

    {
        EnergyReport mink =
            energy_numeric_path(minkowski_profile(), acceptance_schedule(), g);
        double e = std::max({std::fabs(mink.leading_closed),
                             std::fabs(mink.leading_reduced),
                             std::fabs(mink.leading_numeric)});
        b.add("energy.minkowski_routes", 4, e, 1e-10);
    }

    {
        double rel = 0.0;
        std::string detail;
        for (const auto& p :
             {affine_profile(1.0, 0.5), tanh_step_profile(1.0, 0.5, 2.0)}) {
            EnergyReport r = energy_numeric_path(p, acceptance_schedule(), g);
            double e = std::fabs(r.leading_numeric - r.leading_closed) /
                       std::fabs(r.leading_closed);
            if (e > rel) {
                rel = e;
                detail = p.label;
            }
        }
        b.add("energy.numeric_agreement", 4, rel, 0.01, detail);

        EnergyReport c2 =
            energy_numeric_path(constant_profile(2.0), acceptance_schedule(), g);
        // Closed value is exactly zero here, so the numeric route is held to
        // an absolute floor consistent with the 1% contract.
        b.add("energy.numeric_constant_floor", 0,
              std::fabs(c2.leading_numeric), 0.01);
    }

    {
        std::mt19937_64 rng(0x5eed0002ull);
        double neg = -1e300;
        double agree = 0.0;
        int flag_bad = 0;
        for (int trial = 0; trial < 20; ++trial) {
            double m0 = 0.5 + 1.5 * uniform01(rng);
            double a = uniform01(rng);
            double lam = 0.5 + 3.5 * uniform01(rng);
            MassAspectProfile p = tanh_step_profile(m0, a, lam);
            EnergyReport r = energy_numeric_path(p, acceptance_schedule(), g);
            if (!r.dec_flag) ++flag_bad;
            neg = std::max(neg, -std::min(r.leading_closed, r.leading_reduced));
            agree = std::max(agree,
                             std::fabs(r.leading_numeric - r.leading_closed) /
                                 std::max(0.1, std::fabs(r.leading_closed)));
        }
        b.add("energy.positivity_random", 5, neg, 1e-10);
        b.add("energy.numeric_random_agreement", 0, agree, 0.01);
        b.add("energy.random_dec_flags", 0, flag_bad, 0.5);
    }

    {
        EnergyReport r = energy_numeric_path(tanh_step_profile(1.0, -0.5, 2.0),
                                             acceptance_schedule(), g);
        int bad = 0;
        if (r.dec_flag) ++bad;
        if (!(r.leading_closed < -1e-3)) ++bad;
        if (!(r.leading_reduced < -1e-3)) ++bad;
        if (!(r.leading_numeric < -1e-3)) ++bad;
        b.add("energy.nonmonotone_negative", 5, bad, 0.5);
    }

    {
        int accepted = 0;
        MassAspectProfile aff = affine_profile(1.0, 0.5);
        try {
            energy_numeric_path(aff, {100.0, 200.0, 400.0}, g);
            ++accepted;
        } catch (const std::invalid_argument&) {
        }
        try {
            energy_numeric_path(aff, {60.0, 70.0, 80.0, 90.0}, g);
            ++accepted;
        } catch (const std::invalid_argument&) {
        }
        try {
            energy_numeric_path(aff, {10.0, 500.0, 1000.0, 2000.0}, g);
            ++accepted;
        } catch (const std::invalid_argument&) {
        }
        b.add("energy.schedule_validation", 0, accepted, 0.5);
    }
}

// ---- loop invariant (criterion 7) --------------------------------------------

void check_loop(Battery& b, const LatitudeGrid& g) {
    MassAspectProfile aff = affine_profile(1.0, 0.5);
    const std::vector<double> cs = {-0.8, -0.5, -0.2, 0.2, 0.5, 0.8};

    double match = 0.0;
    for (double c : cs) {
        LoopInvariantSample s = loop_invariant(aff, c, g);
        match = std::max(match, std::fabs(s.numeric - s.closed));
    }
    b.add("loop.matches_closed", 7, match, 1e-8);

    {
        LoopInvariantSample s = loop_invariant(aff, 0.5, g);
        double e = std::max(std::fabs(s.closed - 3.0 / 256.0),
                            std::fabs(s.numeric - 3.0 / 256.0));
        b.add("loop.reference_value", 7, e, 1e-10);
    }

    {
        MassAspectProfile c2 = constant_profile(2.0);
        double e = 0.0;
        for (double c : cs) {
            LoopInvariantSample s = loop_invariant(c2, c, g);
            e = std::max(e, std::fabs(s.numeric));
            e = std::max(e, std::fabs(s.closed));
        }
        b.add("loop.constant_zero", 0, e, 1e-13);
    }

    {
        // With m_ref = m0 the signed cap data is odd, so caps reflected about
        // the equator carry opposite signed area.
        double e = 0.0;
        for (double c : {0.2, 0.5, 0.8}) {
            LoopInvariantSample sp = loop_invariant(aff, c, g);
            LoopInvariantSample sm = loop_invariant(aff, -c, g);
            auto [dsig, dh] = delta_data(aff, g);
            LegendreSpectrum anti = antiderivative(to_spectrum(dsig + dh));
            double lo = 0.25 * (evaluate(anti, -c) - evaluate(anti, -1.0));
            e = std::max(e, std::fabs(sp.signed_numeric + lo));
            e = std::max(e, std::fabs(sp.numeric - sm.numeric));
        }
        b.add("loop.reflection_antisymmetry", 0, e, 1e-9);
    }

    {
        // A perturbation supported away from the cap boundary moves the
        // invariant only through the boundary values it leaves untouched.
        const double c = 0.2;
        MassAspectProfile pert = aff;
        pert.label = "perturbed";
        auto beta = [](double x) { return 1e-3 * std::exp(-100.0 * (x - 0.65) * (x - 0.65)); };
        auto dbeta = [beta](double x) { return -200.0 * (x - 0.65) * beta(x); };
        auto base_f = aff.F;
        auto base_df = aff.dF;
        pert.F = [base_f, beta](double x) { return base_f(x) + beta(x); };
        pert.dF = [base_df, dbeta](double x) { return base_df(x) + dbeta(x); };

        LoopInvariantSample s0 = loop_invariant(aff, c, g);
        LoopInvariantSample s1 = loop_invariant(pert, c, g);
        double closed_shift = s1.closed - s0.closed;
        double numeric_shift = s1.signed_numeric - s0.signed_numeric;
        double expect = 0.125 * (1.0 - c * c) * c * beta(c);
        double e = std::max(std::fabs(numeric_shift - expect),
                            std::fabs(closed_shift - expect));
        b.add("loop.boundary_dependence", 0, e, 1e-8);
    }

    {
        int accepted = 0;
        try {
            loop_invariant(aff, 0.995, g);
            ++accepted;
        } catch (const std::invalid_argument&) {
        }
        try {
            loop_invariant(aff, -0.995, g);
            ++accepted;
        } catch (const std::invalid_argument&) {
        }
        b.add("loop.range_validation", 0, accepted, 0.5);
    }
}

} // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
    LatitudeGrid grid(opt.grid_n);
    Battery battery(opt.tolerance_overrides);

    std::vector<MassAspectProfile> generic = canonical_profiles();
    MassAspectProfile user = parse_profile(opt.profile_text);
    bool fresh = true;
    for (const auto& p : generic)
        if (p.label == user.label) fresh = false;
    if (fresh) generic.push_back(user);

    check_grid(battery, grid);
    check_profiles(battery, generic, grid);
    check_geometry(battery, generic, grid);
    check_closedform(battery, generic, grid);
    check_seriesx(battery, grid);

    std::vector<ProfileFits> fits;
    for (const auto& p : acceptance_profiles()) fits.push_back(fit_profile(p, grid));
    check_coefficients(battery, fits, grid);

    check_embedding(battery, generic, grid);
    check_energy(battery, generic, grid);
    check_loop(battery, grid);

    return battery.take();
}

} // namespace vqlm
