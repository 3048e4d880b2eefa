#pragma once

// Calculus for axisymmetric functions on the unit sphere.  Functions are
// sampled in Z = cos(theta) on a Gauss-Legendre latitude grid; the azimuthal
// direction is trivial.  All spectral operations go through the Legendre
// coefficient basis.

#include <functional>
#include <vector>

namespace vqlm {

// P_l(z) by the three-term recurrence.
double legendre_p(int l, double z);

// Nodes (ascending, interior to (-1,1)) and weights of the n-point
// Gauss-Legendre rule, Newton-refined to 1e-15.  Requires n >= 1.
void gauss_legendre_rule(int n, std::vector<double>& nodes,
                         std::vector<double>& weights);

class LatitudeGrid {
public:
    // Requires n >= 8; smaller grids cannot resolve the fields we work with.
    explicit LatitudeGrid(int n);

    int size() const { return n_; }
    double node(int k) const { return nodes_[k]; }
    double weight(int k) const { return weights_[k]; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    // Cached P_l(Z_k), 0 <= l < n.
    double legendre(int l, int k) const { return ptab_[static_cast<size_t>(l) * n_ + k]; }

private:
    int n_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> ptab_;
};

// Nodal values on a LatitudeGrid.  The grid is referenced, not owned, and
// must outlive the field.
struct ScalarField {
    const LatitudeGrid* grid = nullptr;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const LatitudeGrid& g)
        : grid(&g), values(static_cast<size_t>(g.size()), 0.0) {}

    int size() const { return static_cast<int>(values.size()); }
    double operator[](int k) const { return values[k]; }
    double& operator[](int k) { return values[k]; }
};

// Legendre coefficients c_l, 0 <= l < n, of a field on the same grid.
struct LegendreSpectrum {
    const LatitudeGrid* grid = nullptr;
    std::vector<double> coeff;
};

ScalarField sample(const LatitudeGrid& g, const std::function<double(double)>& f);

// Integral over the unit sphere of an axisymmetric function:
// 2*pi * sum_k w_k f_k, accumulated in ascending node order.
double integrate_s2(const ScalarField& f);

LegendreSpectrum to_spectrum(const ScalarField& f);
ScalarField from_spectrum(const LegendreSpectrum& s);

// Series evaluation at any z in [-1,1], including the endpoints.
double evaluate(const LegendreSpectrum& s, double z);

// Coefficients of df/dZ (top mode drops out).
LegendreSpectrum derivative(const LegendreSpectrum& s);

// Coefficients of an antiderivative; the constant mode is left zero, so only
// differences of evaluations are meaningful.
LegendreSpectrum antiderivative(const LegendreSpectrum& s);

// d/dZ and the axisymmetric Laplace-Beltrami operator d/dZ[(1-Z^2) d/dZ],
// both applied spectrally.
ScalarField differentiate(const ScalarField& f);
ScalarField laplacian_axisym(const ScalarField& f);

double sup_norm(const ScalarField& f);
double sup_diff(const ScalarField& a, const ScalarField& b);

// Pointwise arithmetic; operands must share a grid.
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double c, const ScalarField& a);

} // namespace vqlm
