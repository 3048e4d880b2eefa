#include "vqlm/seriesx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vqlm {

namespace {

// Householder QR of an m x p column-major matrix, p <= 4, followed by
// back substitution for each right-hand side.  Plain and allocation-light;
// the design matrix here is tiny and shared across nodes.  The factorization
// and solves run in long double: the monomial basis at ratio-2 sample spacing
// has condition ~3e2, and double round-off there, scaled back by dmin^2 for
// the curvature coefficient, would sit right at the verification tolerances.
struct SmallQR {
    int m = 0, p = 0;
    std::vector<long double> a;    // m*p, column major, overwritten by QR
    std::vector<long double> beta; // Householder scalars

    void factor(const std::vector<double>& mat, int rows, int cols) {
        m = rows;
        p = cols;
        a.assign(mat.begin(), mat.end());
        beta.assign(p, 0.0L);
        for (int j = 0; j < p; ++j) {
            long double* col = &a[static_cast<size_t>(j) * m];
            long double norm = 0.0L;
            for (int i = j; i < m; ++i) norm = std::hypot(norm, col[i]);
            if (norm == 0.0L) throw std::runtime_error("richardson_fit: rank-deficient design");
            long double alpha = col[j] >= 0.0L ? -norm : norm;
            long double v0 = col[j] - alpha;
            col[j] = alpha;
            // Store the Householder vector below the diagonal, scaled by v0.
            for (int i = j + 1; i < m; ++i) col[i] /= v0;
            beta[j] = -v0 / alpha;
            // Apply to the remaining columns.
            for (int jj = j + 1; jj < p; ++jj) {
                long double* c = &a[static_cast<size_t>(jj) * m];
                long double dot = c[j];
                for (int i = j + 1; i < m; ++i) dot += col[i] * c[i];
                dot *= beta[j];
                c[j] -= dot;
                for (int i = j + 1; i < m; ++i) c[i] -= dot * col[i];
            }
        }
    }

    // Least-squares solve; rhs has length m, out has length p.
    void solve(const std::vector<double>& rhs_in, double* out) const {
        std::vector<long double> rhs(rhs_in.begin(), rhs_in.end());
        long double sol[4] = {0.0L, 0.0L, 0.0L, 0.0L};
        for (int j = 0; j < p; ++j) {
            const long double* col = &a[static_cast<size_t>(j) * m];
            long double dot = rhs[j];
            for (int i = j + 1; i < m; ++i) dot += col[i] * rhs[i];
            dot *= beta[j];
            rhs[j] -= dot;
            for (int i = j + 1; i < m; ++i) rhs[i] -= dot * col[i];
        }
        for (int j = p - 1; j >= 0; --j) {
            long double v = rhs[j];
            for (int jj = j + 1; jj < p; ++jj)
                v -= a[static_cast<size_t>(jj) * m + j] * sol[jj];
            sol[j] = v / a[static_cast<size_t>(j) * m + j];
        }
        for (int j = 0; j < p; ++j) out[j] = static_cast<double>(sol[j]);
    }
};

} // namespace

ExpansionTriple richardson_fit(const std::vector<std::pair<double, ScalarField>>& samples) {
    const int m = static_cast<int>(samples.size());
    if (m < 3) throw std::invalid_argument("richardson_fit: need at least three samples");
    const LatitudeGrid* grid = samples.front().second.grid;
    if (!grid) throw std::invalid_argument("richardson_fit: sample without grid");
    for (const auto& [d, f] : samples) {
        if (!(d > 0.0)) throw std::invalid_argument("richardson_fit: d must be positive");
        if (f.grid != grid) throw std::invalid_argument("richardson_fit: samples on different grids");
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (samples[i].first == samples[j].first)
                throw std::invalid_argument("richardson_fit: duplicate d value");

    double dmin = samples[0].first;
    for (const auto& [d, f] : samples) dmin = std::min(dmin, d);

    // Basis {1, x, x^2, x^3} in x = dmin/d keeps the design well scaled.
    const int p = m >= 4 ? 4 : 3;
    std::vector<double> design(static_cast<size_t>(m) * p);
    for (int i = 0; i < m; ++i) {
        const double x = dmin / samples[i].first;
        double pw = 1.0;
        for (int j = 0; j < p; ++j) {
            design[static_cast<size_t>(j) * m + i] = pw;
            pw *= x;
        }
    }
    SmallQR qr;
    qr.factor(design, m, p);

    ExpansionTriple out;
    out.a0 = ScalarField(*grid);
    out.a1 = ScalarField(*grid);
    out.a2 = ScalarField(*grid);
    out.residual = ScalarField(*grid);

    std::vector<double> rhs(m);
    double coef[4];
    for (int k = 0; k < grid->size(); ++k) {
        for (int i = 0; i < m; ++i) rhs[i] = samples[i].second[k];
        coef[3] = 0.0;
        qr.solve(rhs, coef);
        out.a0[k] = coef[0];
        out.a1[k] = coef[1] * dmin;
        out.a2[k] = coef[2] * (dmin * dmin);
        // coef[3] is a3/dmin^3 directly, the nuisance term at the closest d.
        out.residual[k] = std::abs(coef[3]);
    }
    return out;
}

} // namespace vqlm
