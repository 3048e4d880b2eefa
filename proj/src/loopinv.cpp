#include "vqlm/loopinv.hpp"

#include <cmath>
#include <stdexcept>

namespace vqlm {

std::pair<ScalarField, ScalarField> delta_data(const MassAspectProfile& p,
                                               const LatitudeGrid& g) {
    ScalarField dsigma(g), dh(g);
    for (int k = 0; k < g.size(); ++k) {
        const double Z = g.node(k);
        const double sn2 = 1.0 - Z * Z;
        const double dev = p.F(Z) - p.m_ref;
        dsigma[k] = 0.5 * dev * sn2;
        dh[k] = -dev * (1.0 - 2.0 * Z * Z) - 0.5 * p.dF(Z) * Z * sn2;
    }
    return {dsigma, dh};
}

LoopInvariantSample loop_invariant(const MassAspectProfile& p, double c,
                                   const LatitudeGrid& g) {
    if (!(std::abs(c) < 0.99))
        throw std::invalid_argument("loop_invariant: |c| must be below 0.99");

    auto [dsigma, dh] = delta_data(p, g);
    ScalarField integrand = dsigma + dh;

    // Cap integral via the spectral antiderivative; only the difference of
    // endpoint evaluations enters, so its free constant is irrelevant.
    LegendreSpectrum anti = antiderivative(to_spectrum(integrand));
    const double cap = evaluate(anti, 1.0) - evaluate(anti, c);

    LoopInvariantSample out;
    out.c = c;
    out.signed_numeric = 0.25 * cap;
    out.numeric = std::abs(out.signed_numeric);
    out.closed = 0.125 * (1.0 - c * c) * std::abs(c * (p.F(c) - p.m_ref));
    return out;
}

} // namespace vqlm
