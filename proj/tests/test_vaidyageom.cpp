#include "doctest.h"

#include "vqlm/massaspect.hpp"
#include "vqlm/s2grid.hpp"
#include "vqlm/vaidyageom.hpp"

#include <cmath>
#include <stdexcept>

using namespace vqlm;

TEST_CASE("radius and retarded time on the sphere") {
    auto [r, u] = radius_u(100.0, 1.0, 1.0);
    CHECK(r == 101.0);
    CHECK(u == -1.0);

    auto [r2, u2] = radius_u(100.0, -1.0, 1.0);
    CHECK(r2 == 99.0);
    CHECK(u2 == 1.0);

    auto [r3, u3] = radius_u(100.0, 0.0, 1.0);
    CHECK(std::fabs(r3 - std::sqrt(10001.0)) < 1e-12);
    CHECK(std::fabs(u3 - (100.0 - r3)) < 1e-12);

    CHECK_THROWS_AS(radius_u(2.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(radius_u(100.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(radius_u(100.0, 0.0, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(radius_u(100.0, 1.5, 1.0), std::invalid_argument);
}

TEST_CASE("flat profile gives the round unit sphere") {
    LatitudeGrid g(32);
    for (double d : {10.0, 50.0, 1000.0}) {
        SurfaceGeometry s = build_surface_geometry(minkowski_profile(), d, g);
        for (int k = 0; k < g.size(); ++k) {
            double z = g.node(k);
            CHECK(std::fabs(s.g_ss[k] - 1.0) < 1e-12);
            CHECK(std::fabs(s.g_stheta[k]) < 1e-12);
            CHECK(std::fabs(s.sigma_theta[k] - 1.0) < 1e-12);
            CHECK(std::fabs(s.sigma_phi[k] - (1.0 - z * z)) < 1e-12);
            CHECK(std::fabs(s.hhat[k] - 2.0) < 1e-12);
            CHECK(std::fabs(s.h_norm[k] - 2.0) < 1e-12);
            CHECK(std::fabs(s.trk[k]) < 1e-12);
            CHECK(std::fabs(s.alpha_theta[k]) < 1e-12);
            CHECK(std::fabs(s.area_ratio[k] - 1.0) < 1e-12);
            CHECK(std::fabs(s.div_gas[k]) < 1e-12);
        }
    }
}

TEST_CASE("metric entries match the exact closed expressions") {
    LatitudeGrid g(48);
    MassAspectProfile p = constant_profile(2.0);
    const double d = 100.0;
    SurfaceGeometry s = build_surface_geometry(p, d, g);
    for (int k = 0; k < g.size(); ++k) {
        double z = g.node(k);
        auto [r, u] = radius_u(d, z, 1.0);
        double mh = mass_function(p, u) / r;
        double P = (d * z + 1.0) / r;
        double q = d / r;
        double sn = std::sqrt(1.0 - z * z);
        CHECK(std::fabs(s.g_ss[k] - (1.0 + mh * P * P)) < 1e-14);
        CHECK(std::fabs(s.g_stheta[k] + mh * P * q * sn) < 1e-14);
        CHECK(std::fabs(s.sigma_theta[k] - (1.0 + mh * q * q * (1.0 - z * z))) < 1e-14);
        CHECK(std::fabs(s.sigma_phi[k] - (1.0 - z * z)) < 1e-15);
        CHECK(std::fabs(s.area_ratio[k] - std::sqrt(s.sigma_theta[k])) < 1e-15);
    }

    // Near the pole g_ss approaches 1 + 2/101 for this profile and d.
    int top = g.size() - 1;
    double z = g.node(top);
    auto [r, u] = radius_u(d, z, 1.0);
    CHECK(std::fabs(s.g_ss[top] - (1.0 + (2.0 / r) * std::pow((d * z + 1.0) / r, 2))) < 1e-14);
    CHECK(std::fabs(s.g_ss[top] - (1.0 + 2.0 / 101.0)) < 2e-3);
}

TEST_CASE("area ratio expands through second order") {
    LatitudeGrid g(48);
    MassAspectProfile p = affine_profile(1.0, 0.5);
    const double d = 1000.0;
    SurfaceGeometry s = build_surface_geometry(p, d, g);
    for (int k = 0; k < g.size(); ++k) {
        double z = g.node(k);
        double v1 = 0.5 * p.F(z) * (1.0 - z * z);
        CHECK(std::fabs(s.area_ratio[k] - 1.0 - v1 / d) < 5e-6);
    }
}

TEST_CASE("tangential divergence integrates to zero") {
    LatitudeGrid g(64);
    MassAspectProfile p = tanh_step_profile(1.0, 0.5, 2.0);
    for (double d : {250.0, 1000.0}) {
        SurfaceGeometry s = build_surface_geometry(p, d, g);
        CHECK(std::fabs(integrate_s2(s.div_gas * s.area_ratio)) < 1e-10);
    }
}

TEST_CASE("curvatures approach the round-sphere limit") {
    LatitudeGrid g(48);
    MassAspectProfile p = affine_profile(1.0, 0.5);
    SurfaceGeometry s = build_surface_geometry(p, 1000.0, g);
    for (int k = 0; k < g.size(); ++k) {
        CHECK(std::fabs(s.hhat[k] - 2.0) < 5e-3);
        // |H|^2 = hhat^2 - trk^2 keeps |H| at or below hhat.
        CHECK(s.h_norm[k] <= s.hhat[k] + 1e-15);
        double z = g.node(k);
        double trk1 = 0.25 * (1.0 - z * z); // a/2 * (1 - Z^2), a = 0.5
        CHECK(std::fabs(1000.0 * s.trk[k] - trk1) < 5e-3);
    }
}

TEST_CASE("construction guards") {
    LatitudeGrid g(16);
    CHECK_THROWS_AS(build_surface_geometry(constant_profile(2.0), 5.0, g),
                    std::invalid_argument);
}

TEST_CASE("reduced mean curvature combines the stored fields") {
    LatitudeGrid g(16);
    SurfaceGeometry s = build_surface_geometry(tanh_step_profile(1.0, 0.5, 2.0), 100.0, g);
    ScalarField red = reduced_mean_curvature(s);
    CHECK(sup_diff(red, s.hhat + s.div_gas) == 0.0);
}
