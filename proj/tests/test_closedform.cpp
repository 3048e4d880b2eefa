#include "doctest.h"

#include "vqlm/closedform.hpp"
#include "vqlm/massaspect.hpp"
#include "vqlm/s2grid.hpp"

#include <cmath>

using namespace vqlm;

namespace {

double at(const ScalarField& f, double z) { return evaluate(to_spectrum(f), z); }

} // namespace

TEST_CASE("flat profile zeroes every coefficient") {
    LatitudeGrid g(32);
    CoefficientSet c = closed_forms(minkowski_profile(), g);
    for (const ScalarField* f : {&c.sigma_m1, &c.alpha_m1, &c.v_m1, &c.v_m2, &c.bh_m1,
                                 &c.bh_m2, &c.div_m1, &c.rhs_n, &c.rhs_x, &c.combo})
        CHECK(sup_norm(*f) == 0.0);
}

TEST_CASE("frozen point values, constant profile") {
    LatitudeGrid g(32);
    CoefficientSet c = closed_forms(constant_profile(2.0), g);
    CHECK(std::fabs(at(c.sigma_m1, 0.3) - 2.0) < 1e-13);
    CHECK(sup_norm(c.alpha_m1) < 1e-15);
    CHECK(std::fabs(at(c.v_m1, 0.0) - 1.0) < 1e-13);
    CHECK(std::fabs(at(c.v_m2, 0.0) + 0.5) < 1e-13);
    CHECK(std::fabs(at(c.bh_m1, 1.0) + 2.0) < 1e-12);
    CHECK(std::fabs(at(c.bh_m2, 1.0) - 1.0) < 1e-12);
    CHECK(std::fabs(at(c.div_m1, 1.0) + 4.0) < 1e-12);
    CHECK(std::fabs(at(c.combo, 0.5) + 0.90625) < 1e-13);
}

TEST_CASE("frozen point values, affine profile") {
    LatitudeGrid g(32);
    CoefficientSet c = closed_forms(affine_profile(1.0, 0.5), g);
    CHECK(std::fabs(at(c.sigma_m1, 0.5) - 1.25) < 1e-13);
    CHECK(std::fabs(at(c.alpha_m1, 0.5) + 0.25) < 1e-13);
    CHECK(std::fabs(at(c.rhs_n, 0.0) + 1.0) < 1e-13);
    CHECK(std::fabs(at(c.rhs_x, 0.0) + 1.0) < 1e-13);
}

TEST_CASE("reduction identity under the sphere integral") {
    LatitudeGrid g(64);
    for (const auto& p : {constant_profile(2.0), affine_profile(1.0, 0.5),
                          tanh_step_profile(1.0, 0.5, 2.0), bump_profile(1.0, 0.5, 2.0)}) {
        CoefficientSet c = closed_forms(p, g);
        double full = integrate_s2(c.v_m2 + c.bh_m2 + c.v_m1 * c.bh_m1);
        double reduced = integrate_s2(c.combo);
        CHECK(std::fabs(full - reduced) <=
              1e-12 * std::max({1.0, std::fabs(full), std::fabs(reduced)}));
    }
}

TEST_CASE("divergence split and total-derivative structure") {
    LatitudeGrid g(64);
    MassAspectProfile p = tanh_step_profile(1.0, 0.5, 2.0);
    CoefficientSet c = closed_forms(p, g);

    ScalarField twice = 2.0 * (c.v_m1 + c.bh_m1);
    CHECK(sup_diff(twice, c.div_m1) < 1e-14);

    ScalarField prim = sample(g, [&p](double z) { return p.F(z) * z * (1.0 - z * z); });
    CHECK(sup_diff(differentiate(prim), c.div_m1) < 1e-10);
    CHECK(std::fabs(integrate_s2(c.div_m1)) < 1e-12);
}

TEST_CASE("radial right-hand side carries no kernel modes") {
    LatitudeGrid g(64);
    CoefficientSet c = closed_forms(bump_profile(1.0, 0.5, 2.0), g);
    LegendreSpectrum s = to_spectrum(c.rhs_x);
    CHECK(std::fabs(s.coeff[0]) < 1e-12);
    CHECK(std::fabs(s.coeff[1]) < 1e-12);
}
