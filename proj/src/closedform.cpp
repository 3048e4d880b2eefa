#include "vqlm/closedform.hpp"

namespace vqlm {

CoefficientSet closed_forms(const MassAspectProfile& p, const LatitudeGrid& g) {
    CoefficientSet c;
    c.sigma_m1 = ScalarField(g);
    c.alpha_m1 = ScalarField(g);
    c.v_m1 = ScalarField(g);
    c.v_m2 = ScalarField(g);
    c.bh_m1 = ScalarField(g);
    c.bh_m2 = ScalarField(g);
    c.div_m1 = ScalarField(g);
    c.rhs_n = ScalarField(g);
    c.rhs_x = ScalarField(g);
    c.combo = ScalarField(g);

    for (int k = 0; k < g.size(); ++k) {
        const double Z = g.node(k);
        const double Z2 = Z * Z;
        const double s2 = 1.0 - Z2; // sin^2(theta)
        const double F = p.F(Z);
        const double F1 = p.dF(Z);
        const double F2 = p.d2F(Z);
        const double F3 = p.d3F(Z);

        c.sigma_m1[k] = F;
        c.alpha_m1[k] = -F1 * Z + 0.25 * F2 * s2;

        c.v_m1[k] = 0.5 * F * s2;
        c.v_m2[k] = -1.5 * F * Z * s2 + 0.25 * F1 * s2 * s2 - 0.125 * F * F * s2 * s2;

        c.bh_m1[k] = -F * Z2 + 0.5 * F1 * Z * s2;
        c.bh_m2[k] = 0.25 * F2 * Z * s2 * s2
                   - 0.5 * F1 * (-1.0 + 6.0 * Z2 - 5.0 * Z2 * Z2)
                   + 0.5 * F * (9.0 * Z2 * Z - 7.0 * Z)
                   + 0.25 * F * F * (6.0 * Z2 - 7.0 * Z2 * Z2)
                   - F * F1 * (0.5 * Z * s2 * s2 - 0.25 * Z2 * Z * s2);

        c.div_m1[k] = F * (1.0 - 3.0 * Z2) + F1 * Z * s2;

        c.rhs_n[k] = -0.5 * F1 * Z * s2 - F * (1.0 - 2.0 * Z2);
        c.rhs_x[k] = 0.5 * F3 * s2 * s2 - 4.0 * F2 * Z * s2 - 2.0 * F1 * (1.0 - 3.0 * Z2);

        c.combo[k] = -F * Z + 0.125 * F * F * Z2 * s2;
    }
    return c;
}

} // namespace vqlm
