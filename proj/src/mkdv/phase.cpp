#include "mkdv/phase.hpp"

#include <cmath>

#include "mkdv/modulation.hpp"

namespace mkdv {
namespace {

const cplx I{0.0, 1.0};

double log_a2(double s, const ShockParams& p) {
    if (s == 0.0) return std::log(0.5);  // a(0+-) = 1/sqrt(2)
    return 2.0 * std::log(std::abs(a_coeff(CutPoint(s), p)));
}

// ln((1+|r(s)|^2)/(1+|r(lambda)|^2)) on the real stationary segment
double L_of(double s, double lam, const ShockParams& p) {
    const double rs = std::norm(r_coeff(CutPoint(s), p));
    const double rl = std::norm(r_coeff(CutPoint(lam), p));
    return std::log((1.0 + rs) / (1.0 + rl));
}

}  // namespace

cplx theta_phase(cplx k, double xi) { return 4.0 * k * k * k + 12.0 * xi * k; }

double lambda_stationary(double xi, const ShockParams& p) {
    const double v = -xi - 0.5 * p.c * p.c;
    if (v < 0.0)
        throw std::domain_error("lambda_stationary: requires xi <= -c^2/2");
    return std::sqrt(v);
}

cplx g_c(const CutPoint& pt, double xi, const ShockParams& p) {
    return (4.0 * pt.k * pt.k - 2.0 * p.c * p.c + 12.0 * xi) * X(pt, p);
}

double nu_of_xi(double xi, const ShockParams& p) {
    const double lam = lambda_stationary(xi, p);
    const double r2 = std::norm(r_coeff(CutPoint(lam), p));
    return std::log(1.0 + r2) / (2.0 * pi);
}

cplx chi_fn(cplx k, double xi, const ShockParams& p) {
    const double lam = lambda_stationary(xi, p);
    QuadratureSpec qs;
    qs.abs_tol = qs.rel_tol = 1e-12;
    const cplx integral = integrate_cplx(
        [&](double s) { return L_of(s, lam, p) / (s - k); }, -lam, lam, qs);
    return std::exp(integral / (2.0 * pi * I));
}

cplx delta_fn(cplx k, double xi, const ShockParams& p) {
    const double lam = lambda_stationary(xi, p);
    if (k.imag() == 0.0 && std::fabs(k.real()) < lam)
        throw std::domain_error("delta_fn: point on (-lambda, lambda) needs a boundary call");
    const double nu = nu_of_xi(xi, p);
    const cplx ratio = (k - lam) / (k + lam);
    return std::pow(ratio, cplx(0.0, -nu)) * chi_fn(k, xi, p);
}

cplx delta_boundary(double s0, double xi, const ShockParams& p, bool from_above) {
    const double lam = lambda_stationary(xi, p);
    if (!(std::fabs(s0) < lam))
        throw std::domain_error("delta_boundary: s0 must lie in (-lambda, lambda)");
    const double nu = nu_of_xi(xi, p);
    const double L0 = L_of(s0, lam, p);

    QuadratureSpec qs;
    qs.abs_tol = qs.rel_tol = 1e-12;
    // principal value by singularity subtraction
    auto sub = [&](double s) {
        if (s == s0) return 0.0;
        return (L_of(s, lam, p) - L0) / (s - s0);
    };
    double pv = integrate(sub, -lam, s0, qs) + integrate(sub, s0, lam, qs);
    pv += L0 * std::log((lam - s0) / (lam + s0));
    const cplx cauchy = pv + (from_above ? I * pi * L0 : -I * pi * L0);

    // ratio (s0-lam)/(s0+lam) is negative real; arg -> +pi from above, -pi below
    const double mag = (lam - s0) / (lam + s0);
    const cplx log_ratio(std::log(mag), from_above ? pi : -pi);
    return std::exp(cplx(0.0, -nu) * log_ratio) * std::exp(cauchy / (2.0 * pi * I));
}

namespace {

// folded real-axis integral of log a^2(s) / ((s-k) X(s)):
// even log a^2, odd X give the kernel 2s / ((s^2-k^2) X(s)) on (0, inf)
cplx I_real_axis(cplx k, const ShockParams& p) {
    QuadratureSpec qs;
    qs.abs_tol = qs.rel_tol = 1e-12;
    const double S = std::max(1000.0 * p.c, 3.0 * std::abs(k));
    return integrate_cplx(
        [&](double s) {
            return log_a2(s, p) * 2.0 * s /
                   ((s * s - k * k) * X(CutPoint(s), p));
        },
        0.0, S, qs);
}

double log_delta_m2_on_axis(double y, double xi, const ShockParams& p) {
    // delta is real and positive on the imaginary axis
    const cplx d = delta_fn(cplx(0.0, y), xi, p);
    return -2.0 * std::log(d.real());
}

// cut integral of log delta^{-2}(s) / ((s-k) X_+(s)) over s in (-ic, ic),
// split at 0 where delta's own jump sits
cplx I_cut(cplx k, double xi, const ShockParams& p) {
    QuadratureSpec qs;
    qs.abs_tol = qs.rel_tol = 1e-11;
    auto f = [&](double y) {
        const cplx s(0.0, y);
        return log_delta_m2_on_axis(y, xi, p) * I /
               ((s - k) * std::sqrt(p.c * p.c - y * y));
    };
    return integrate_cplx(f, -p.c, 0.0, qs.with_singularities(true, false)) +
           integrate_cplx(f, 0.0, p.c, qs.with_singularities(false, true));
}

}  // namespace

cplx F_plateau(cplx k, double xi, const ShockParams& p) {
    if (k.imag() == 0.0)
        throw std::domain_error("F_plateau: k must be off the real axis");
    if (k.real() == 0.0 && std::fabs(k.imag()) < p.c)
        throw std::domain_error("F_plateau: k on the cut needs the boundary call");
    const cplx Faux =
        std::exp(X(CutPoint(k), p) / (2.0 * pi * I) * (I_real_axis(k, p) - I_cut(k, xi, p)));
    return k.imag() > 0.0 ? Faux / a_coeff(CutPoint(k), p)
                          : a_coeff(CutPoint(k), p) * Faux;
}

cplx F_plateau_boundary(double y0, Side side, double xi, const ShockParams& p) {
    if (side == Side::Off || !(std::fabs(y0) < p.c) || y0 == 0.0)
        throw std::domain_error("F_plateau_boundary: need side and y0 in the open cut");
    const cplx k0(0.0, y0);
    const double Xp = std::sqrt(p.c * p.c - y0 * y0);
    const double phi0 = log_delta_m2_on_axis(y0, xi, p) / Xp;

    QuadratureSpec qs;
    qs.abs_tol = qs.rel_tol = 1e-11;
    auto sub = [&](double y) {
        if (std::fabs(y - y0) < 1e-300) return 0.0;
        const double phi = log_delta_m2_on_axis(y, xi, p) / std::sqrt(p.c * p.c - y * y);
        return (phi - phi0) / (y - y0);
    };
    // (-c,0) and (0,c) split for delta's jump at 0, with y0 inside one of them
    double pv = 0.0;
    const double pieces[3] = {-p.c, 0.0, p.c};
    for (int i = 0; i < 2; ++i) {
        double a = pieces[i], b = pieces[i + 1];
        QuadratureSpec qi = qs.with_singularities(i == 0, i == 1);
        if (y0 > a && y0 < b) {
            pv += integrate(sub, a, y0, qi.with_singularities(qi.singular_left, false));
            pv += integrate(sub, y0, b, qi.with_singularities(false, qi.singular_right));
        } else {
            pv += integrate(sub, a, b, qi);
        }
    }
    pv += phi0 * std::log((p.c - y0) / (p.c + y0));

    // Plus side (Re k > 0): cut Cauchy integral limit = PV - i pi phi0
    const cplx cut_int = pv + (side == Side::Plus ? -I * pi * phi0 : I * pi * phi0);
    const cplx Xside = X(CutPoint(k0, side), p);
    const cplx Faux = std::exp(Xside / (2.0 * pi * I) * (I_real_axis(k0, p) - cut_int));
    const cplx a_side = a_coeff(CutPoint(k0, side), p);
    return y0 > 0.0 ? Faux / a_side : a_side * Faux;
}

double sym_integral_real(const ShockParams& p) {
    QuadratureSpec qs;
    qs.abs_tol = qs.rel_tol = 1e-11;
    const double S = 1000.0 * p.c;
    auto f = [&](double s) {
        return log_a2(s, p) / X(CutPoint(s), p).real();
    };
    return integrate(f, -S, 0.0, qs) + integrate(f, 0.0, S, qs);
}

double sym_integral_cut(double xi, const ShockParams& p) {
    QuadratureSpec qs;
    qs.abs_tol = qs.rel_tol = 1e-10;
    // int log delta^{-2}(s) / X_+(s) ds along s = iy; the i ds factor is
    // dropped (a purely imaginary overall factor does not affect vanishing)
    auto f = [&](double y) {
        return log_delta_m2_on_axis(y, xi, p) / std::sqrt(p.c * p.c - y * y);
    };
    return integrate(f, -p.c, 0.0, qs.with_singularities(true, false)) +
           integrate(f, 0.0, p.c, qs.with_singularities(false, true));
}

SignGrid signature_grid(PhaseKind which, double xi, const ShockParams& p,
                        const SignGridSpec& spec) {
    if (spec.nx < 2 || spec.ny < 2)
        throw std::domain_error("signature_grid: resolution must be at least 2x2");
    if (which == PhaseKind::Gc && xi > -0.5 * p.c * p.c)
        throw std::domain_error("signature_grid: Gc requires xi <= -c^2/2");
    if (which == PhaseKind::Gell && !(xi > -0.5 * p.c * p.c && xi < p.c * p.c / 3.0))
        throw std::domain_error("signature_grid: Gell requires xi in the elliptic range");

    ModulationState st;
    if (which == PhaseKind::Gell) st = resolve_state(xi, p);

    SignGrid g{spec.re_min, spec.re_max, spec.im_min, spec.im_max, spec.nx, spec.ny, {}};
    g.values.resize(static_cast<size_t>(spec.nx) * spec.ny);

    for (int iy = 0; iy < spec.ny; ++iy) {
        const double km =
            spec.im_min + (spec.im_max - spec.im_min) * iy / (spec.ny - 1.0);
        for (int ix = 0; ix < spec.nx; ++ix) {
            const double kr =
                spec.re_min + (spec.re_max - spec.re_min) * ix / (spec.nx - 1.0);
            const cplx k(kr, km);
            cplx val;
            switch (which) {
                case PhaseKind::Theta:
                    val = theta_phase(k, xi);
                    break;
                case PhaseKind::Gc: {
                    const bool on_cut = kr == 0.0 && std::fabs(km) <= p.c;
                    val = at_branch_point(k, p)
                              ? cplx(0.0)
                              : g_c(CutPoint(k, on_cut ? Side::Plus : Side::Off), xi, p);
                    break;
                }
                case PhaseKind::Gell:
                    val = g_elliptic(CutPoint(k, g_ell_needs_side(k, st) ? Side::Plus
                                                                         : Side::Off),
                                     st);
                    break;
            }
            const double tol = spec.zero_tol_rel * std::max(1.0, std::abs(val));
            const double im = val.imag();
            int s = 0;
            if (im > tol) s = 1;
            else if (im < -tol) s = -1;
            g.values[static_cast<size_t>(iy) * spec.nx + ix] = s;
        }
    }
    return g;
}

}  // namespace mkdv
