#pragma once

// Large-d expansion extraction.  Given samples of a field family v(d) at
// several d, fit v = a0 + a1/d + a2/d^2 (+ a3/d^3 nuisance when at least four
// samples are present) per node by least squares in x = 1/d.

#include "vqlm/s2grid.hpp"

#include <utility>
#include <vector>

namespace vqlm {

struct ExpansionTriple {
    ScalarField a0, a1, a2;
    // Magnitude of the fitted nuisance term at the smallest d, |a3|/min(d)^3;
    // zero when only three samples were given.
    ScalarField residual;
};

// Samples are (d, field) pairs sharing one grid.  Requires at least three
// samples; duplicate d values are rejected.
ExpansionTriple richardson_fit(const std::vector<std::pair<double, ScalarField>>& samples);

} // namespace vqlm
