#include "doctest.h"

#include "vqlm/s2grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace vqlm;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("legendre recurrence values") {
    CHECK(legendre_p(0, 0.37) == 1.0);
    CHECK(legendre_p(1, 0.37) == 0.37);
    double z = 0.3;
    double p5 = (63.0 * std::pow(z, 5) - 70.0 * z * z * z + 15.0 * z) / 8.0;
    CHECK(std::fabs(legendre_p(5, z) - p5) < 1e-15);
    CHECK_THROWS_AS(legendre_p(-1, 0.0), std::invalid_argument);
}

TEST_CASE("gauss-legendre rule structure") {
    std::vector<double> nodes, weights;
    gauss_legendre_rule(16, nodes, weights);
    double wsum = 0.0;
    for (int i = 0; i < 16; ++i) {
        CHECK(nodes[i] > -1.0);
        CHECK(nodes[i] < 1.0);
        if (i) CHECK(nodes[i] > nodes[i - 1]);
        CHECK(std::fabs(nodes[i] + nodes[15 - i]) < 1e-15);
        CHECK(std::fabs(weights[i] - weights[15 - i]) < 1e-15);
        CHECK(weights[i] > 0.0);
        wsum += weights[i];
    }
    CHECK(std::fabs(wsum - 2.0) < 1e-14);

    gauss_legendre_rule(9, nodes, weights);
    CHECK(nodes[4] == 0.0);

    // Roots of P_n: P_n(node) ~ 0.
    for (double z : nodes) CHECK(std::fabs(legendre_p(9, z)) < 1e-13);
}

TEST_CASE("grid rejects tiny sizes") {
    CHECK_THROWS_AS(LatitudeGrid(7), std::invalid_argument);
    CHECK_NOTHROW(LatitudeGrid(8));
}

TEST_CASE("sphere quadrature of monomials") {
    LatitudeGrid g(24);
    ScalarField z4 = sample(g, [](double z) { return z * z * z * z; });
    CHECK(std::fabs(integrate_s2(z4) - 4.0 * pi / 5.0) < 1e-13);
    ScalarField one = sample(g, [](double) { return 1.0; });
    CHECK(std::fabs(integrate_s2(one) - 4.0 * pi) < 1e-13);
}

TEST_CASE("spectral round trip and endpoint evaluation") {
    LatitudeGrid g(32);
    ScalarField f = sample(g, [](double z) { return z * z * z - 0.25 * z; });
    LegendreSpectrum s = to_spectrum(f);
    CHECK(sup_diff(from_spectrum(s), f) < 1e-12);
    CHECK(std::fabs(evaluate(s, 1.0) - 0.75) < 1e-12);
    CHECK(std::fabs(evaluate(s, -1.0) + 0.75) < 1e-12);
    CHECK(std::fabs(evaluate(s, 0.5) - (0.125 - 0.125)) < 1e-12);
}

TEST_CASE("spectral derivative and antiderivative") {
    LatitudeGrid g(32);
    ScalarField f = sample(g, [](double z) { return std::pow(z, 4); });
    ScalarField df = sample(g, [](double z) { return 4.0 * z * z * z; });
    CHECK(sup_diff(differentiate(f), df) < 1e-13);

    ScalarField q = sample(g, [](double z) { return 5.0 * std::pow(z, 4); });
    LegendreSpectrum anti = antiderivative(to_spectrum(q));
    CHECK(std::fabs((evaluate(anti, 1.0) - evaluate(anti, -1.0)) - 2.0) < 1e-13);
    CHECK(std::fabs((evaluate(anti, 0.8) - evaluate(anti, 0.2)) -
                    (std::pow(0.8, 5) - std::pow(0.2, 5))) < 1e-13);
}

TEST_CASE("smooth derivative accuracy") {
    LatitudeGrid g(128);
    ScalarField f = sample(g, [](double z) { return std::tanh(z); });
    ScalarField df = sample(g, [](double z) {
        double c = std::cosh(z);
        return 1.0 / (c * c);
    });
    CHECK(sup_diff(differentiate(f), df) < 1e-10);
}

TEST_CASE("laplacian eigenmode and self-adjointness") {
    LatitudeGrid g(48);
    ScalarField p3(g);
    for (int k = 0; k < g.size(); ++k) p3[k] = g.legendre(3, k);
    ScalarField lap = laplacian_axisym(p3);
    CHECK(sup_diff(lap, -12.0 * p3) < 1e-12);

    ScalarField u = sample(g, [](double z) { return std::exp(z); });
    ScalarField v = sample(g, [](double z) { return z * z * (1.0 - z); });
    CHECK(std::fabs(integrate_s2(u * laplacian_axisym(v)) -
                    integrate_s2(v * laplacian_axisym(u))) < 1e-11);
}

TEST_CASE("field arithmetic guards grids") {
    LatitudeGrid g1(16), g2(16);
    ScalarField a(g1), b(g2);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS_AS(sup_diff(a, b), std::invalid_argument);
    ScalarField unbound;
    CHECK_THROWS_AS(integrate_s2(unbound), std::invalid_argument);
}
