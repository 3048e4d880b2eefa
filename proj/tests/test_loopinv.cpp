#include "vqlm/loopinv.hpp"

#include "vqlm/massaspect.hpp"
#include "vqlm/s2grid.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace vqlm;

TEST_CASE("deficit fields take the expected affine values") {
    LatitudeGrid g(64);
    MassAspectProfile p = affine_profile(1.0, 0.5);
    auto [dsigma, dh] = delta_data(p, g);
    LegendreSpectrum ss = to_spectrum(dsigma);
    LegendreSpectrum sh = to_spectrum(dh);
    // F - m_ref = 0.5 Z, so at Z = 0.5 the trace part is (1/4) Z (1 - Z^2)
    // and the curvature part is -(1/2) Z (1 - 2 Z^2) - (1/4) Z (1 - Z^2).
    CHECK(std::abs(evaluate(ss, 0.5) - 0.09375) <= 1e-13);
    CHECK(std::abs(evaluate(sh, 0.5) - (-0.21875)) <= 1e-13);
}

TEST_CASE("numeric cap integral matches the boundary closed form") {
    LatitudeGrid g(64);
    MassAspectProfile p = affine_profile(1.0, 0.5);
    for (double c : {-0.8, -0.5, -0.2, 0.2, 0.5, 0.8}) {
        LoopInvariantSample s = loop_invariant(p, c, g);
        CHECK(s.c == c);
        CHECK(std::abs(s.numeric - s.closed) <= 1e-8);
        CHECK(s.numeric == std::abs(s.signed_numeric));
    }
    LoopInvariantSample ref = loop_invariant(p, 0.5, g);
    CHECK(ref.closed == 3.0 / 256.0);
    CHECK(std::abs(ref.numeric - 3.0 / 256.0) <= 1e-10);
}

TEST_CASE("tanh profile agrees too") {
    LatitudeGrid g(96);
    MassAspectProfile p = tanh_step_profile(1.0, 0.5, 2.0);
    for (double c : {-0.8, -0.2, 0.5}) {
        LoopInvariantSample s = loop_invariant(p, c, g);
        CHECK(std::abs(s.numeric - s.closed) <= 1e-8);
    }
}

TEST_CASE("constant profile at its own reference gives zero") {
    LatitudeGrid g(48);
    MassAspectProfile p = constant_profile(2.0);
    for (double c : {-0.7, 0.0, 0.3}) {
        LoopInvariantSample s = loop_invariant(p, c, g);
        CHECK(s.closed == 0.0);
        CHECK(std::abs(s.numeric) <= 1e-15);
    }
}

TEST_CASE("magnitude is symmetric under circle reflection for odd deficits") {
    LatitudeGrid g(64);
    // affine about m_ref = m0 has F - m_ref odd, so caps above c and -c
    // carry the same magnitude.
    MassAspectProfile p = affine_profile(1.0, 0.5);
    for (double c : {0.2, 0.5, 0.8}) {
        LoopInvariantSample up = loop_invariant(p, c, g);
        LoopInvariantSample dn = loop_invariant(p, -c, g);
        CHECK(std::abs(up.numeric - dn.numeric) <= 1e-9);
        CHECK(std::abs(up.closed - dn.closed) <= 1e-15);
    }
}

TEST_CASE("circles too close to the poles are rejected") {
    LatitudeGrid g(32);
    MassAspectProfile p = affine_profile(1.0, 0.5);
    CHECK_THROWS_AS(loop_invariant(p, 0.995, g), std::invalid_argument);
    CHECK_THROWS_AS(loop_invariant(p, -0.995, g), std::invalid_argument);
}
