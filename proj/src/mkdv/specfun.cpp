#include "mkdv/specfun.hpp"

#include <cmath>

namespace mkdv {
namespace {

int term_bound(double re_z, double tau, double tol) {
    // drop terms with |tau| m^2/2 - |Re z| m > ln(1/tol)
    const double at = std::fabs(tau);
    const double lg = std::log(1.0 / tol);
    const double m = (std::fabs(re_z) + std::sqrt(re_z * re_z + 2.0 * at * lg)) / at;
    return static_cast<int>(std::ceil(m)) + 2;
}

cplx direct_sum(cplx z, double tau, double tol, int* terms_out = nullptr) {
    const int M = term_bound(z.real(), tau, tol);
    cplx s = 1.0;  // m = 0
    for (int m = 1; m <= M; ++m) {
        const double g = 0.5 * tau * m * m;
        s += std::exp(g + z * static_cast<double>(m));
        s += std::exp(g - z * static_cast<double>(m));
    }
    if (terms_out) *terms_out = 2 * M + 1;
    return s;
}

// Reduce z by the lattice 2*pi*i Z + tau Z. The 2*pi*i shift is exact; the
// tau shift multiplies by exp(tau l^2/2 + z l), tracked in log scale.
cplx reduce_argument(cplx z, double tau, double* log_scale, cplx* phase) {
    *log_scale = 0.0;
    *phase = 1.0;
    const double l = std::round(-z.real() / tau);
    if (l != 0.0) {
        const cplx w = 0.5 * tau * l * l + z * l;
        *log_scale = w.real();
        *phase = std::exp(cplx(0.0, w.imag()));
        z += tau * l;
    }
    const double n = std::round(z.imag() / (2.0 * pi));
    if (n != 0.0) z = cplx(z.real(), z.imag() - 2.0 * pi * n);
    return z;
}

ScaledCplx theta_scaled_impl(cplx z, const ThetaParams& p) {
    double ls;
    cplx ph;
    const cplx zr = reduce_argument(z, p.tau, &ls, &ph);
    if (p.tau <= -2.0 * pi) {
        return {ph * direct_sum(zr, p.tau, p.truncation_tol), ls};
    }
    // Poisson: Theta(z,tau) = Theta(2 pi i z / tau, tau*) sqrt(2 pi/-tau)
    //                         * exp(-z^2/(2 tau)),  tau* = 4 pi^2 / tau.
    const double tau_s = 4.0 * pi * pi / p.tau;
    cplx zs = 2.0 * pi * cplx(0.0, 1.0) * zr / p.tau;
    double ls2;
    cplx ph2;
    zs = reduce_argument(zs, tau_s, &ls2, &ph2);
    const cplx gauss = -zr * zr / (2.0 * p.tau);
    const double amp = std::sqrt(2.0 * pi / -p.tau);
    return {ph * ph2 * direct_sum(zs, tau_s, p.truncation_tol) * amp *
                std::exp(cplx(0.0, gauss.imag())),
            ls + ls2 + gauss.real()};
}

}  // namespace

cplx theta_direct(cplx z, const ThetaParams& p) {
    return direct_sum(z, p.tau, p.truncation_tol);
}

cplx theta_poisson(cplx z, const ThetaParams& p) {
    const double tau_s = 4.0 * pi * pi / p.tau;
    const cplx zs = 2.0 * pi * cplx(0.0, 1.0) * z / p.tau;
    double ls;
    cplx ph;
    const cplx zr = reduce_argument(zs, tau_s, &ls, &ph);
    return ph * direct_sum(zr, tau_s, p.truncation_tol) * std::exp(ls) *
           std::sqrt(2.0 * pi / -p.tau) * std::exp(-z * z / (2.0 * p.tau));
}

ScaledCplx theta_scaled(cplx z, const ThetaParams& p) {
    return theta_scaled_impl(z, p);
}

cplx theta(cplx z, const ThetaParams& p) { return theta_scaled_impl(z, p).value(); }

cplx theta_ratio(cplx z1, cplx z2, const ThetaParams& p) {
    const ScaledCplx a = theta_scaled_impl(z1, p);
    const ScaledCplx b = theta_scaled_impl(z2, p);
    return (a.mantissa / b.mantissa) * std::exp(a.log_scale - b.log_scale);
}

int theta_direct_term_count(cplx z, const ThetaParams& p) {
    return 2 * term_bound(z.real(), p.tau, p.truncation_tol) + 1;
}

double complete_elliptic_K(double m) {
    if (!(m >= 0.0 && m < 1.0))
        throw std::domain_error("complete_elliptic_K: m must lie in [0,1)");
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    for (int i = 0; i < 64 && std::fabs(a - b) > 1e-17 * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return 0.5 * pi / a;
}

double jacobi_dn(double u, double m) {
    if (!(m >= 0.0 && m < 1.0))
        throw std::domain_error("jacobi_dn: m must lie in [0,1)");
    if (m < 1e-16) return 1.0;

    // reduce by the period 2K to keep the ascending phase accurate
    const double twoK = 2.0 * complete_elliptic_K(m);
    u = std::remainder(u, twoK);

    // descending Landen (A&S 16.4): a_{n+1} = (a_n+b_n)/2, c_{n+1} = (a_n-b_n)/2
    constexpr int cap = 32;
    double a[cap + 1], csq[cap + 1];
    a[0] = 1.0;
    double b = std::sqrt(1.0 - m);
    csq[0] = std::sqrt(m);
    int n = 0;
    while (n < cap && std::fabs(csq[n]) > 1e-17 * a[n]) {
        const double an = 0.5 * (a[n] + b);
        const double cn = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
        a[n] = an;
        csq[n] = cn;
    }
    double phi = std::ldexp(1.0, n) * a[n] * u;
    for (int j = n; j >= 1; --j) {
        phi = 0.5 * (phi + std::asin(std::clamp(csq[j] / a[j] * std::sin(phi), -1.0, 1.0)));
    }
    // sn = sin(phi_0); the cos-ratio form degenerates at the quarter period
    const double sn = std::sin(phi);
    return std::sqrt(std::max(0.0, 1.0 - m * sn * sn));
}

}  // namespace mkdv
