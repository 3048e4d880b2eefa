#include "vqlm/massaspect.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace vqlm {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string make_label(const std::string& name,
                       const std::vector<std::pair<std::string, double>>& kv) {
    std::string out = name;
    char sep = ':';
    for (const auto& [k, v] : kv) {
        out += sep;
        out += k + "=" + num(v);
        sep = ',';
    }
    return out;
}

void check_finite(double v, const char* what) {
    if (!std::isfinite(v))
        throw std::invalid_argument(std::string("profile parameter not finite: ") + what);
}

// Overflow-safe log(cosh(y)).
double log_cosh(double y) {
    double a = std::abs(y);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

} // namespace

MassAspectProfile minkowski_profile() {
    MassAspectProfile p;
    auto zero = [](double) { return 0.0; };
    p.F = zero;
    p.dF = zero;
    p.d2F = zero;
    p.d3F = zero;
    p.G = zero;
    p.m_ref = 0.0;
    p.label = make_label("minkowski", {{"mref", 0.0}});
    return p;
}

MassAspectProfile constant_profile(double m0) {
    check_finite(m0, "m0");
    MassAspectProfile p;
    auto zero = [](double) { return 0.0; };
    p.F = [m0](double) { return m0; };
    p.dF = zero;
    p.d2F = zero;
    p.d3F = zero;
    p.G = [m0](double x) { return m0 * x; };
    p.m_ref = m0;
    p.label = make_label("constant", {{"m0", m0}, {"mref", m0}});
    return p;
}

MassAspectProfile affine_profile(double m0, double a) {
    check_finite(m0, "m0");
    check_finite(a, "a");
    MassAspectProfile p;
    p.F = [m0, a](double x) { return m0 + a * x; };
    p.dF = [a](double) { return a; };
    p.d2F = [](double) { return 0.0; };
    p.d3F = [](double) { return 0.0; };
    p.G = [m0, a](double x) { return m0 * x + 0.5 * a * x * x; };
    p.m_ref = m0;
    p.label = make_label("affine", {{"m0", m0}, {"a", a}, {"mref", m0}});
    return p;
}

MassAspectProfile tanh_step_profile(double m0, double a, double lambda) {
    check_finite(m0, "m0");
    check_finite(a, "a");
    check_finite(lambda, "lambda");
    if (lambda <= 0.0) throw std::invalid_argument("tanh_step: lambda must be positive");
    MassAspectProfile p;
    p.F = [m0, a, lambda](double x) { return m0 + a * std::tanh(lambda * x); };
    p.dF = [a, lambda](double x) {
        double c = std::cosh(lambda * x);
        return a * lambda / (c * c);
    };
    p.d2F = [a, lambda](double x) {
        double t = std::tanh(lambda * x), c = std::cosh(lambda * x);
        return -2.0 * a * lambda * lambda * t / (c * c);
    };
    p.d3F = [a, lambda](double x) {
        double t = std::tanh(lambda * x), c = std::cosh(lambda * x);
        double s2 = 1.0 / (c * c);
        return a * lambda * lambda * lambda * (4.0 * s2 * t * t - 2.0 * s2 * s2);
    };
    p.G = [m0, a, lambda](double x) { return m0 * x + (a / lambda) * log_cosh(lambda * x); };
    p.m_ref = m0;
    p.label = make_label("tanh_step", {{"m0", m0}, {"a", a}, {"lambda", lambda}, {"mref", m0}});
    return p;
}

MassAspectProfile bump_profile(double m0, double a, double lambda) {
    check_finite(m0, "m0");
    check_finite(a, "a");
    check_finite(lambda, "lambda");
    if (lambda <= 0.0) throw std::invalid_argument("bump: lambda must be positive");
    MassAspectProfile p;
    p.F = [m0, a, lambda](double x) { return m0 + a * std::exp(-lambda * x * x); };
    p.dF = [a, lambda](double x) { return -2.0 * a * lambda * x * std::exp(-lambda * x * x); };
    p.d2F = [a, lambda](double x) {
        return a * (4.0 * lambda * lambda * x * x - 2.0 * lambda) * std::exp(-lambda * x * x);
    };
    p.d3F = [a, lambda](double x) {
        return a * (12.0 * lambda * lambda * x - 8.0 * lambda * lambda * lambda * x * x * x) *
               std::exp(-lambda * x * x);
    };
    p.G = [m0, a, lambda](double x) {
        return m0 * x + a * std::sqrt(0.25 * std::numbers::pi / lambda) * std::erf(std::sqrt(lambda) * x);
    };
    p.m_ref = m0;
    p.label = make_label("bump", {{"m0", m0}, {"a", a}, {"lambda", lambda}, {"mref", m0}});
    return p;
}

double mass_function(const MassAspectProfile& p, double u) { return p.F(-u); }

bool dec_satisfied(const MassAspectProfile& p) {
    const int n = 2001;
    for (int i = 0; i < n; ++i) {
        double x = -1.5 + 3.0 * i / (n - 1);
        if (p.dF(x) < -1e-12) return false;
    }
    return true;
}

MassAspectProfile parse_profile(const std::string& text) {
    std::string name = text;
    std::map<std::string, double> kv;
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        name = text.substr(0, colon);
        std::string rest = text.substr(colon + 1);
        size_t pos = 0;
        while (pos <= rest.size()) {
            size_t comma = rest.find(',', pos);
            std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                           : comma - pos);
            auto eq = item.find('=');
            if (item.empty() || eq == std::string::npos || eq == 0)
                throw std::invalid_argument("profile: expected key=value, got '" + item + "'");
            std::string key = item.substr(0, eq);
            std::string val = item.substr(eq + 1);
            char* end = nullptr;
            double v = std::strtod(val.c_str(), &end);
            if (val.empty() || end != val.c_str() + val.size() || !std::isfinite(v))
                throw std::invalid_argument("profile: bad number '" + val + "' for key " + key);
            if (kv.count(key))
                throw std::invalid_argument("profile: duplicate key " + key);
            kv[key] = v;
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }

    auto take = [&kv](const char* key) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::invalid_argument(std::string("profile: missing key ") + key);
        double v = it->second;
        kv.erase(it);
        return v;
    };

    MassAspectProfile p;
    if (name == "minkowski") {
        p = minkowski_profile();
    } else if (name == "constant") {
        p = constant_profile(take("m0"));
    } else if (name == "affine") {
        double m0 = take("m0");
        p = affine_profile(m0, take("a"));
    } else if (name == "tanh_step") {
        double m0 = take("m0");
        double a = take("a");
        p = tanh_step_profile(m0, a, take("lambda"));
    } else if (name == "bump") {
        double m0 = take("m0");
        double a = take("a");
        p = bump_profile(m0, a, take("lambda"));
    } else {
        throw std::invalid_argument("profile: unknown preset '" + name + "'");
    }

    auto it = kv.find("mref");
    if (it != kv.end()) {
        double mref = it->second;
        kv.erase(it);
        if (mref < 0.0) throw std::invalid_argument("profile: mref must be nonnegative");
        p.m_ref = mref;
        // Rebuild the canonical label with the override.
        auto amp = p.label.find(",mref=");
        if (amp == std::string::npos) amp = p.label.find(":mref=");
        p.label = p.label.substr(0, amp) + (p.label[amp] == ':' ? ":" : ",") + "mref=" + [mref] {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", mref);
            return std::string(buf);
        }();
    }
    if (!kv.empty())
        throw std::invalid_argument("profile: unknown key '" + kv.begin()->first + "' for preset " + name);
    return p;
}

} // namespace vqlm
