#pragma once

// Mass aspect profiles.  A profile packages the limit function F and its
// first three derivatives, the antiderivative G with G(0) = 0, and a
// reference mass for the loop quantity.  The retarded-time mass function is
// M(u) = F(-u), so a nondecreasing F means mass that is radiated away.

#include <functional>
#include <string>

namespace vqlm {

struct MassAspectProfile {
    std::function<double(double)> F, dF, d2F, d3F, G;
    double m_ref = 0.0;
    std::string label;
};

MassAspectProfile minkowski_profile();
MassAspectProfile constant_profile(double m0);
MassAspectProfile affine_profile(double m0, double a);
MassAspectProfile tanh_step_profile(double m0, double a, double lambda);
MassAspectProfile bump_profile(double m0, double a, double lambda);

// M(u) = F(-u).
double mass_function(const MassAspectProfile& p, double u);

// True when F is nondecreasing on [-1.5, 1.5] (dominant energy condition),
// probed on a fine sample of dF.
bool dec_satisfied(const MassAspectProfile& p);

// Textual form "name" or "name:key=value,...".  Names: minkowski, constant,
// affine, tanh_step, bump.  Keys: m0, a, lambda as required by the preset,
// plus optional mref (defaults to m0, or 0 for minkowski).  Unknown keys,
// missing keys, or malformed numbers raise std::invalid_argument.
MassAspectProfile parse_profile(const std::string& text);

} // namespace vqlm
