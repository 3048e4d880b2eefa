#pragma once

// Quasi-local energy of the unit spheres, three ways:
//  * closed:  E = (1 / 8 pi d^2) * integral of Z F dV, cross-checked against
//    the flux form (1 / 16 pi d^2) * integral of F' (1 - Z^2) dV;
//  * reduced: the combined closed-form integrand of the 1/d^2 expansion;
//  * numeric: expansion coefficients extracted from the exact geometry at a
//    d schedule, the embedding system solved from the extracted data, and
//    the energy integrand assembled from the pieces.

#include "vqlm/massaspect.hpp"
#include "vqlm/s2grid.hpp"

#include <vector>

namespace vqlm {

double energy_closed(const MassAspectProfile& p, double d, const LatitudeGrid& g);
double energy_reduced(const MassAspectProfile& p, double d, const LatitudeGrid& g);

struct EnergyReport {
    std::vector<double> d_values;
    std::vector<double> e_closed, e_reduced, e_numeric;
    // d^2 * E for each route (d-independent up to the orders dropped).
    double leading_closed = 0.0, leading_reduced = 0.0, leading_numeric = 0.0;
    double disc_reduced = 0.0;  // |leading_reduced - leading_closed|
    double disc_numeric = 0.0;  // |leading_numeric - leading_closed|
    bool dec_flag = false;
};

// d_schedule needs at least four distinct values, all >= 50, spanning a
// factor of four, so the extraction is well posed.
EnergyReport energy_numeric_path(const MassAspectProfile& p,
                                 const std::vector<double>& d_schedule,
                                 const LatitudeGrid& g);

} // namespace vqlm
