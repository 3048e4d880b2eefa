#include "vqlm/vaidyageom.hpp"

#include <cmath>
#include <stdexcept>

namespace vqlm {

std::pair<double, double> radius_u(double d, double Z, double s) {
    if (!(d > 2.0)) throw std::invalid_argument("radius_u: d must exceed 2");
    if (!(s > 0.0) || s > 2.0) throw std::invalid_argument("radius_u: s outside (0,2]");
    if (Z < -1.0 || Z > 1.0) throw std::invalid_argument("radius_u: Z outside [-1,1]");
    double r2 = d * d + 2.0 * s * d * Z + s * s;
    if (r2 <= 0.0) throw std::runtime_error("radius_u: nonpositive radicand");
    double r = std::sqrt(r2);
    return {r, d - r};
}

namespace {

// Everything needed at one latitude node: the slice metric, its s-, theta-
// and t-derivatives, and the shift covector with derivatives.  Coordinates
// on the slice are (s, theta, phi); indices 0,1 below are (s, theta).
struct NodeGeometry {
    double sn, sn2;                                  // sin(theta), sin^2
    double mhat;
    double g00, g01, g11, g22;
    double g00_s, g01_s, g11_s, g22_s;
    double g00_th, g01_th, g11_th, g22_th;
    double g00_t, g01_t, g11_t;
    double b0, b1;
    double b0_s, b0_th, b1_s, b1_th;
    double GT, GTz, B, Bz;                           // shift scalar m*P*q and m*q^2
};

NodeGeometry node_geometry(const MassAspectProfile& p, double d, double Z, double s) {
    NodeGeometry n;
    n.sn2 = 1.0 - Z * Z;
    n.sn = std::sqrt(n.sn2);

    const double r2 = d * d + 2.0 * s * d * Z + s * s;
    const double r = std::sqrt(r2);
    const double w = r - d; // = -u on the slice t = d
    const double M = p.F(w);
    const double Fp = p.dF(w);

    const double mh = M / r;
    const double P = (d * Z + s) / r;   // dr/ds
    const double Pz = d * d * (d + s * Z) / (r * r2);
    const double Ps = d * d * n.sn2 / (r * r2);
    const double q = d / r;
    const double qz = -s * d * d / (r * r2);
    const double qs = -d * P / r2;
    const double mh_s = (P / r) * (Fp - mh);
    const double mh_z = (s * d / r2) * (Fp - mh);
    const double mh_t = -Fp / r;        // M(u) = F(-u), u = t - r

    const double A = mh * P * P;
    const double Az = mh_z * P * P + 2.0 * mh * P * Pz;
    const double As = mh_s * P * P + 2.0 * mh * P * Ps;
    const double At = mh_t * P * P;

    const double GT = mh * P * q;
    const double GTz = mh_z * P * q + mh * Pz * q + mh * P * qz;
    const double GTs = mh_s * P * q + mh * Ps * q + mh * P * qs;
    const double GTt = mh_t * P * q;

    const double B = mh * q * q;
    const double Bz = mh_z * q * q + 2.0 * mh * q * qz;
    const double Bs = mh_s * q * q + 2.0 * mh * q * qs;
    const double Bt = mh_t * q * q;

    const double E = mh * q;
    const double Ez = mh_z * q + mh * qz;
    const double Es = mh_s * q + mh * qs;

    n.mhat = mh;
    n.GT = GT;
    n.GTz = GTz;
    n.B = B;
    n.Bz = Bz;

    n.g00 = 1.0 + A;
    n.g01 = -s * GT * n.sn;
    n.g11 = s * s * (1.0 + B * n.sn2);
    n.g22 = s * s * n.sn2;

    n.g00_s = As;
    n.g01_s = -n.sn * (GT + s * GTs);
    n.g11_s = 2.0 * s * (1.0 + B * n.sn2) + s * s * Bs * n.sn2;
    n.g22_s = 2.0 * s * n.sn2;

    n.g00_th = -n.sn * Az;
    n.g01_th = s * (n.sn2 * GTz - Z * GT);
    n.g11_th = s * s * n.sn * (2.0 * B * Z - n.sn2 * Bz);
    n.g22_th = 2.0 * s * s * Z * n.sn;

    n.g00_t = At;
    n.g01_t = -s * GTt * n.sn;
    n.g11_t = s * s * Bt * n.sn2;

    n.b0 = -mh * P;
    n.b0_s = -(mh_s * P + mh * Ps);
    n.b0_th = n.sn * (mh_z * P + mh * Pz);
    n.b1 = s * E * n.sn;
    n.b1_s = n.sn * (E + s * Es);
    n.b1_th = s * (E * Z - n.sn2 * Ez);
    return n;
}

} // namespace

SurfaceGeometry build_surface_geometry(const MassAspectProfile& p, double d,
                                       const LatitudeGrid& g) {
    if (!(d >= 10.0)) throw std::invalid_argument("build_surface_geometry: d < 10");

    SurfaceGeometry geo;
    geo.d = d;
    geo.grid = &g;
    for (ScalarField* f : {&geo.g_ss, &geo.g_stheta, &geo.sigma_theta, &geo.sigma_phi,
                           &geo.hhat, &geo.k_ss, &geo.k_stheta, &geo.k_thetatheta,
                           &geo.k_phiphi, &geo.trk, &geo.h_norm, &geo.alpha_theta,
                           &geo.area_ratio, &geo.div_gas})
        *f = ScalarField(g);

    ScalarField alpha_part(g);  // -k(normal, d_theta), pre spectral correction
    ScalarField trk_over_h(g);

    for (int k = 0; k < g.size(); ++k) {
        const double Z = g.node(k);
        const NodeGeometry n = node_geometry(p, d, Z, 1.0);

        const double det2 = n.g00 * n.g11 - n.g01 * n.g01;
        if (det2 <= 0.0 || n.g22 <= 0.0)
            throw std::runtime_error("build_surface_geometry: degenerate slice metric");
        const double i00 = n.g11 / det2;
        const double i01 = -n.g01 / det2;
        const double i11 = n.g00 / det2;

        const double lapse2 = (1.0 - n.mhat) + i00 * n.b0 * n.b0 +
                              2.0 * i01 * n.b0 * n.b1 + i11 * n.b1 * n.b1;
        if (lapse2 <= 0.0)
            throw std::runtime_error("build_surface_geometry: nonpositive lapse");
        const double N = std::sqrt(lapse2);

        // Christoffel symbols of the slice metric in the (s, theta) block and
        // the phi-phi slot; phi-independence kills everything else we need.
        const double t00_0 = n.g00_s;
        const double t00_1 = 2.0 * n.g01_s - n.g00_th;
        const double c0_00 = 0.5 * (i00 * t00_0 + i01 * t00_1);
        const double c1_00 = 0.5 * (i01 * t00_0 + i11 * t00_1);

        const double c0_01 = 0.5 * (i00 * n.g00_th + i01 * n.g11_s);
        const double c1_01 = 0.5 * (i01 * n.g00_th + i11 * n.g11_s);

        const double t11_0 = 2.0 * n.g01_th - n.g11_s;
        const double c0_11 = 0.5 * (i00 * t11_0 + i01 * n.g11_th);
        const double c1_11 = 0.5 * (i01 * t11_0 + i11 * n.g11_th);

        const double c0_pp = -0.5 * (i00 * n.g22_s + i01 * n.g22_th);
        const double c1_pp = -0.5 * (i01 * n.g22_s + i11 * n.g22_th);

        const double D00 = n.b0_s - c0_00 * n.b0 - c1_00 * n.b1;
        const double D01 = n.b1_s - c0_01 * n.b0 - c1_01 * n.b1;
        const double D10 = n.b0_th - c0_01 * n.b0 - c1_01 * n.b1;
        const double D11 = n.b1_th - c0_11 * n.b0 - c1_11 * n.b1;
        const double Dpp = -c0_pp * n.b0 - c1_pp * n.b1;

        const double k_ss = (n.g00_t - 2.0 * D00) / (2.0 * N);
        const double k_st = (n.g01_t - D01 - D10) / (2.0 * N);
        const double k_tt = (n.g11_t - 2.0 * D11) / (2.0 * N);
        const double k_pp = -Dpp / N;

        const double trk = k_tt / n.g11 + k_pp / n.g22;

        // Outward unit normal of the sphere within the slice.
        const double alpha_slice = std::sqrt(det2 / n.g11);
        const double btheta = n.g01 / n.g11;

        // div gbar(., s) on the sphere, all analytic:
        // (1/sqrt det sigma) d_theta [ sqrt det sigma sigma^tt g_01 ].
        const double sg11 = std::sqrt(n.g11);
        const double g11z = n.Bz * n.sn2 - 2.0 * n.B * Z; // d g11 / dZ at s = 1
        const double h = n.GT / sg11;
        const double hz = n.GTz / sg11 - 0.5 * n.GT * g11z / (n.g11 * sg11);
        const double divgas = (-2.0 * Z * h + n.sn2 * hz) / sg11;

        const double hhat =
            (0.5 * (n.g11_s / n.g11 + n.g22_s / n.g22) - divgas) / alpha_slice;

        const double H2 = hhat * hhat - trk * trk;
        if (H2 <= 0.0)
            throw std::runtime_error("build_surface_geometry: mean curvature not spacelike");
        const double Hn = std::sqrt(H2);

        geo.g_ss[k] = n.g00;
        geo.g_stheta[k] = n.g01;
        geo.sigma_theta[k] = n.g11;
        geo.sigma_phi[k] = n.g22;
        geo.hhat[k] = hhat;
        geo.k_ss[k] = k_ss;
        geo.k_stheta[k] = k_st;
        geo.k_thetatheta[k] = k_tt;
        geo.k_phiphi[k] = k_pp;
        geo.trk[k] = trk;
        geo.h_norm[k] = Hn;
        geo.area_ratio[k] = sg11;
        geo.div_gas[k] = divgas;

        alpha_part[k] = -(k_st - btheta * k_tt) / alpha_slice;
        trk_over_h[k] = trk / Hn;
    }

    // alpha_theta = -k(nu, d_theta) + d_theta (trk / |H|); the latitude
    // derivative of the smooth ratio is taken spectrally.
    ScalarField dZ_ratio = differentiate(trk_over_h);
    for (int k = 0; k < g.size(); ++k) {
        const double sn = std::sqrt(1.0 - g.node(k) * g.node(k));
        geo.alpha_theta[k] = alpha_part[k] - sn * dZ_ratio[k];
    }
    return geo;
}

ScalarField reduced_mean_curvature(const SurfaceGeometry& geom) {
    return geom.hhat + geom.div_gas;
}

} // namespace vqlm
