#include "vqlm/s2grid.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace vqlm {

double legendre_p(int l, double z) {
    if (l < 0) throw std::invalid_argument("legendre_p: negative degree");
    double pm1 = 1.0, p = z;
    if (l == 0) return 1.0;
    for (int j = 2; j <= l; ++j) {
        double pj = ((2 * j - 1) * z * p - (j - 1) * pm1) / j;
        pm1 = p;
        p = pj;
    }
    return p;
}

void gauss_legendre_rule(int n, std::vector<double>& nodes,
                         std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_rule: n < 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Standard asymptotic guess for the i-th root counted from Z = +1.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            // P_n(z) and neighbors by recurrence.
            double p0 = 1.0, p1 = z;
            for (int j = 2; j <= n; ++j) {
                double pj = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = pj;
            }
            pp = n * (z * p1 - p0) / (z * z - 1.0);
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) {
                converged = true;
                break;
            }
        }
        if (!converged) throw std::runtime_error("gauss_legendre_rule: Newton stalled");
        double w = 2.0 / ((1.0 - z * z) * pp * pp);
        nodes[i] = -z;          // ascending: most negative root first
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
}

namespace {

// Double-double helpers for the Legendre table build.  Plain-double recurrence
// drifts to ~1e-14 absolute by l ~ 128, and the spectral operators scale the
// resulting coefficient noise by up to l^2; carrying the recurrence in
// double-double keeps each stored value correctly rounded.
struct Dd {
    double hi, lo;
};

inline Dd dd_norm(double hi, double lo) {
    double s = hi + lo;
    return {s, lo - (s - hi)};
}

inline Dd dd_mul(Dd a, double b) {
    double p = a.hi * b;
    double e = std::fma(a.hi, b, -p);
    return dd_norm(p, e + a.lo * b);
}

inline Dd dd_sub(Dd a, Dd b) {
    double s = a.hi - b.hi;
    double bb = s - a.hi;
    double err = (a.hi - (s - bb)) + (-b.hi - bb);
    return dd_norm(s, err + (a.lo - b.lo));
}

inline Dd dd_div(Dd a, double b) {
    double q = a.hi / b;
    double r = std::fma(-q, b, a.hi) + a.lo;
    return dd_norm(q, r / b);
}

} // namespace

LatitudeGrid::LatitudeGrid(int n) : n_(n) {
    if (n < 8) throw std::invalid_argument("LatitudeGrid: n < 8");
    gauss_legendre_rule(n, nodes_, weights_);
    ptab_.resize(static_cast<size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        const double z = nodes_[k];
        Dd p0{1.0, 0.0}, p1{z, 0.0};
        ptab_[k] = 1.0;
        if (n > 1) ptab_[static_cast<size_t>(n) + k] = z;
        for (int l = 2; l < n; ++l) {
            Dd pl = dd_div(dd_sub(dd_mul(dd_mul(p1, z), 2 * l - 1),
                                  dd_mul(p0, l - 1)),
                           l);
            p0 = p1;
            p1 = pl;
            ptab_[static_cast<size_t>(l) * n + k] = pl.hi + pl.lo;
        }
    }
}

namespace {

// Compensated accumulator (Neumaier two-sum, exact products via fma).  The
// spectral operators scale coefficients by up to l^2 (l^4 for the bilaplacian
// composites), so plain-summation noise in the transforms would be amplified
// past the pinned tolerances; compensation keeps the transforms near the
// input-rounding floor.
struct Accum {
    double sum = 0.0, comp = 0.0;

    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }

    // Adds a*b*c with the product rounding errors captured exactly.
    void add_product(double a, double b, double c) {
        double ab = a * b;
        double e1 = std::fma(a, b, -ab);
        double abc = ab * c;
        double e2 = std::fma(ab, c, -abc);
        add(abc);
        comp += e2 + e1 * c;
    }

    double value() const { return sum + comp; }
};

// Coefficients below a few hundred ulp of the spectrum peak are quadrature
// round-off (node representation noise), not signal.  The derivative and
// Laplacian weights amplify such noise by up to l^2, so those operators
// clip it before applying their mode scalings.
double noise_floor(const LegendreSpectrum& s) {
    double mx = 0.0;
    for (double c : s.coeff) mx = std::max(mx, std::abs(c));
    return 512.0 * std::numeric_limits<double>::epsilon() * mx;
}

void require_grid(const ScalarField& f) {
    if (!f.grid || f.size() != f.grid->size())
        throw std::invalid_argument("ScalarField: missing or mismatched grid");
}

void require_same(const ScalarField& a, const ScalarField& b) {
    require_grid(a);
    require_grid(b);
    if (a.grid != b.grid)
        throw std::invalid_argument("ScalarField: operands on different grids");
}

} // namespace

ScalarField sample(const LatitudeGrid& g, const std::function<double(double)>& f) {
    ScalarField out(g);
    for (int k = 0; k < g.size(); ++k) out[k] = f(g.node(k));
    return out;
}

double integrate_s2(const ScalarField& f) {
    require_grid(f);
    const LatitudeGrid& g = *f.grid;
    double acc = 0.0;
    for (int k = 0; k < g.size(); ++k) acc += g.weight(k) * f[k];
    return 2.0 * std::numbers::pi * acc;
}

LegendreSpectrum to_spectrum(const ScalarField& f) {
    require_grid(f);
    const LatitudeGrid& g = *f.grid;
    const int n = g.size();
    LegendreSpectrum s;
    s.grid = f.grid;
    s.coeff.assign(n, 0.0);
    for (int l = 0; l < n; ++l) {
        Accum acc;
        for (int k = 0; k < n; ++k) acc.add_product(g.weight(k), f[k], g.legendre(l, k));
        s.coeff[l] = 0.5 * (2 * l + 1) * acc.value();
    }
    return s;
}

ScalarField from_spectrum(const LegendreSpectrum& s) {
    if (!s.grid || static_cast<int>(s.coeff.size()) != s.grid->size())
        throw std::invalid_argument("LegendreSpectrum: missing or mismatched grid");
    const LatitudeGrid& g = *s.grid;
    const int n = g.size();
    ScalarField f(g);
    for (int k = 0; k < n; ++k) {
        Accum acc;
        for (int l = 0; l < n; ++l) acc.add_product(s.coeff[l], g.legendre(l, k), 1.0);
        f[k] = acc.value();
    }
    return f;
}

double evaluate(const LegendreSpectrum& s, double z) {
    const int n = static_cast<int>(s.coeff.size());
    double acc = 0.0;
    double p0 = 1.0, p1 = z;
    if (n > 0) acc += s.coeff[0];
    if (n > 1) acc += s.coeff[1] * z;
    for (int l = 2; l < n; ++l) {
        double pl = ((2 * l - 1) * z * p1 - (l - 1) * p0) / l;
        p0 = p1;
        p1 = pl;
        acc += s.coeff[l] * pl;
    }
    return acc;
}

LegendreSpectrum derivative(const LegendreSpectrum& s) {
    const int n = static_cast<int>(s.coeff.size());
    LegendreSpectrum d;
    d.grid = s.grid;
    d.coeff.assign(n, 0.0);
    // (P_l)' expands over lower odd-offset modes: b_l = (2l+1) * sum of c_j,
    // j > l, j - l odd.  Backward pass keeps it O(n).
    const double tau = noise_floor(s);
    double t_lp1 = 0.0, t_lp2 = 0.0; // running sums at l+1, l+2
    for (int l = n - 2; l >= 0; --l) {
        double c = s.coeff[l + 1];
        if (std::abs(c) < tau) c = 0.0;
        double t_l = c + t_lp2;
        d.coeff[l] = (2 * l + 1) * t_l;
        t_lp2 = t_lp1;
        t_lp1 = t_l;
    }
    return d;
}

LegendreSpectrum antiderivative(const LegendreSpectrum& s) {
    const int n = static_cast<int>(s.coeff.size());
    LegendreSpectrum a;
    a.grid = s.grid;
    a.coeff.assign(n, 0.0);
    // From (2l+1) P_l = (P_{l+1} - P_{l-1})'; the c_{n-1}/(2n-1) tail mode is
    // beyond the band limit and is dropped.
    for (int m = 1; m < n; ++m) {
        double v = s.coeff[m - 1] / (2 * m - 1);
        if (m + 1 < n) v -= s.coeff[m + 1] / (2 * m + 3);
        a.coeff[m] = v;
    }
    return a;
}

ScalarField differentiate(const ScalarField& f) {
    return from_spectrum(derivative(to_spectrum(f)));
}

ScalarField laplacian_axisym(const ScalarField& f) {
    LegendreSpectrum s = to_spectrum(f);
    const double tau = noise_floor(s);
    for (int l = 0; l < static_cast<int>(s.coeff.size()); ++l) {
        if (std::abs(s.coeff[l]) < tau) s.coeff[l] = 0.0;
        s.coeff[l] *= -static_cast<double>(l) * (l + 1);
    }
    return from_spectrum(s);
}

double sup_norm(const ScalarField& f) {
    require_grid(f);
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double sup_diff(const ScalarField& a, const ScalarField& b) {
    require_same(a, b);
    double m = 0.0;
    for (int k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    require_same(a, b);
    ScalarField out(*a.grid);
    for (int k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
    return out;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    require_same(a, b);
    ScalarField out(*a.grid);
    for (int k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
    return out;
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    require_same(a, b);
    ScalarField out(*a.grid);
    for (int k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
    return out;
}

ScalarField operator*(double c, const ScalarField& a) {
    require_grid(a);
    ScalarField out(*a.grid);
    for (int k = 0; k < a.size(); ++k) out[k] = c * a[k];
    return out;
}

} // namespace vqlm
