#include "mkdv/wavefield.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mkdv/specfun.hpp"

namespace mkdv {
namespace {

const cplx I{0.0, 1.0};

double reduce_U(double U) {
    // the theta ratio and the dn forms are exactly 2*pi-periodic in U
    double r = std::remainder(U, 2.0 * pi);
    return r;
}

double xi_of(double x, double t) { return x / (12.0 * t); }

}  // namespace

const char* region_name(Region r) {
    switch (r) {
        case Region::Plateau: return "plateau";
        case Region::Elliptic: return "elliptic";
        case Region::Vanishing: return "vanishing";
        case Region::BoundaryLayer: return "boundary-layer";
    }
    return "?";
}

RegionLabel classify(double x, double t, double c, double edge_width) {
    if (!(t > 0.0)) throw std::domain_error("classify: t must be > 0");
    if (!(c > 0.0)) throw std::domain_error("classify: c must be > 0");
    const double c2 = c * c;
    const double xi = xi_of(x, t);
    const double xm = -0.5 * c2, xp = c2 / 3.0;
    const double dist = std::min(std::fabs(xi - xm), std::fabs(xi - xp)) / c2;
    const double signed_dist = (xi > xm && xi < xp) ? dist : -dist;
    RegionLabel lbl{Region::BoundaryLayer, signed_dist};
    if (dist <= edge_width) {
        lbl.tag = Region::BoundaryLayer;
    } else if (xi < xm) {
        lbl.tag = Region::Plateau;
    } else if (xi > xp) {
        lbl.tag = Region::Vanishing;
    } else {
        lbl.tag = Region::Elliptic;
    }
    return lbl;
}

double q_mod_theta_from(double U, const ModulationState& st) {
    const ThetaParams tp(st.tau);
    const double Ur = reduce_U(U);
    const cplx ratio = theta_ratio(cplx(0.0, pi + Ur), cplx(0.0, Ur), tp);
    return std::sqrt(st.c * st.c - st.d * st.d) * ratio.real();
}

double q_mod_theta(double x, double t, const ShockParams& p) {
    const ModulationState st = resolve_state(xi_of(x, t), p);
    return q_mod_theta_from(t * st.B_g + st.B_Omega * st.Delta, st);
}

double q_mod_dn_from(double U, const ModulationState& st) {
    const double m = st.m;
    const double K = complete_elliptic_K(m);
    const double Ur = reduce_U(U);
    const double first = (st.c + st.d) * jacobi_dn(K * (Ur / pi + 1.0), m);
    const double second = (st.c - st.d) / jacobi_dn(K * Ur / pi, m);
    if (std::fabs(first - second) > 1e-10 * (st.c + st.d)) {
        std::ostringstream os;
        os << "q_mod_dn: the two printed forms disagree: " << first << " vs " << second;
        throw std::runtime_error(os.str());
    }
    return first;
}

double q_mod_dn(double x, double t, const ShockParams& p) {
    const ModulationState st = resolve_state(xi_of(x, t), p);
    return q_mod_dn_from(t * st.B_g + st.B_Omega * st.Delta, st);
}

std::pair<double, double> envelope(double xi, const ShockParams& p) {
    if (!(xi > p.xi_minus() && xi < p.xi_plus()))
        throw std::domain_error("envelope: xi outside the elliptic interval");
    const double d = resolve_state(xi, p).d;
    return {p.c - d, p.c + d};
}

double local_dU_dx(double xi, double t, const ShockParams& p) {
    if (!(t > 0.0)) throw std::domain_error("local_dU_dx: t must be > 0");
    const double edge_dist = std::min(xi - p.xi_minus(), p.xi_plus() - xi);
    if (!(edge_dist > 0.0))
        throw std::domain_error("local_dU_dx: xi outside the elliptic interval");
    double h = std::min(1e-5 * p.c * p.c, 0.25 * edge_dist);
    if (!(h > 1e-12 * p.c * p.c))
        throw std::domain_error("local_dU_dx: too close to a region edge");
    const ModulationState sp = resolve_state(xi + h, p);
    const ModulationState sm = resolve_state(xi - h, p);
    const double dBg = (sp.B_g - sm.B_g) / (2.0 * h);
    const double dBOD = (sp.B_Omega * sp.Delta - sm.B_Omega * sm.Delta) / (2.0 * h);
    return dBg / 12.0 + dBOD / (12.0 * t);
}

double local_wavelength(double xi, double t, const ShockParams& p) {
    return 2.0 * pi / std::fabs(local_dU_dx(xi, t, p));
}

WaveSample q_asymptotic(double x, double t, const ShockParams& p, double edge_width) {
    WaveSample s;
    s.x = x;
    s.t = t;
    s.region = classify(x, t, p.c, edge_width);
    const double xi = xi_of(x, t);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.envelope_lo = s.envelope_hi = s.wavelength = nan;

    auto eval_elliptic = [&]() {
        const ModulationState st = resolve_state(xi, p);
        const double U = t * st.B_g + st.B_Omega * st.Delta;
        const double qt = q_mod_theta_from(U, st);
        const double qd = q_mod_dn_from(U, st);
        if (std::fabs(qt - qd) > 1e-8 * (st.c + st.d)) {
            std::ostringstream os;
            os << "q_asymptotic: theta and dn forms disagree: " << qt << " vs " << qd;
            throw std::runtime_error(os.str());
        }
        s.q = qt;
        s.envelope_lo = p.c - st.d;
        s.envelope_hi = p.c + st.d;
        s.wavelength = local_wavelength(xi, t, p);
        s.error_order = "O(t^-1/2)";
    };

    switch (s.region.tag) {
        case Region::Plateau:
            s.q = p.c;
            s.error_order = "O(t^-1/2)";
            break;
        case Region::Vanishing:
            s.q = 0.0;
            s.error_order = "O(t^-1/2) dispersive decay";
            break;
        case Region::Elliptic:
            eval_elliptic();
            break;
        case Region::BoundaryLayer:
            s.low_confidence = true;
            if (xi <= p.xi_minus()) {
                s.q = p.c;
                s.error_order = "boundary layer near xi=-c^2/2";
            } else if (xi >= p.xi_plus()) {
                s.q = 0.0;
                s.error_order = "boundary layer near xi=c^2/3";
            } else {
                eval_elliptic();
                s.low_confidence = true;
                s.error_order = "boundary layer";
            }
            break;
    }
    return s;
}

namespace {

cplx quartic_root_ratio(cplx k, cplx num_shift, cplx den_shift) {
    return std::pow((k - num_shift) / (k - den_shift), 0.25);
}

struct ThetaPack {
    ThetaParams tp;
    cplx iU;
    explicit ThetaPack(const ModulationState& st, double t)
        : tp(st.tau), iU(0.0, reduce_U_public(t * st.B_g + st.B_Omega * st.Delta)) {}
    static double reduce_U_public(double U) { return std::remainder(U, 2.0 * pi); }
    cplx ratio(cplx z1, cplx z2) const { return theta_ratio(z1, z2, tp); }
};

}  // namespace

ModelMatrix model_matrix_entries(double xi, double t, cplx k, const ShockParams& p) {
    const ModulationState st = resolve_state(xi, p);
    const ThetaPack th(st, t);
    const cplx ic(0.0, st.c), id(0.0, st.d);
    const cplx gamma = quartic_root_ratio(k, ic, id) * quartic_root_ratio(k, -id, -ic);
    const cplx A = abel_map(CutPoint(k), st);
    const cplx half_pi_i(0.0, 0.5 * pi);
    const cplx gp = 0.5 * (gamma + 1.0 / gamma), gm = 0.5 * (gamma - 1.0 / gamma);
    const cplx norm = th.ratio(cplx(0.0, 0.0), th.iU);
    ModelMatrix M;
    M.m11 = gp * th.ratio(A - half_pi_i - th.iU, A - half_pi_i) * norm;
    M.m12 = gm * th.ratio(-A - half_pi_i - th.iU, -A - half_pi_i) * norm;
    M.m21 = gm * th.ratio(A + half_pi_i - th.iU, A + half_pi_i) * norm;
    M.m22 = gp * th.ratio(-A + half_pi_i - th.iU, -A + half_pi_i) * norm;
    return M;
}

ModelMatrix model_matrix_entries_lambda(double xi, double t, cplx k,
                                        const ShockParams& p) {
    const ModulationState st = resolve_state(xi, p);
    const ThetaPack th(st, t);
    const cplx ic(0.0, st.c), id(0.0, st.d);
    const cplx lam = quartic_root_ratio(k, ic, -ic) * quartic_root_ratio(k, id, -id);
    const cplx A = abel_map(CutPoint(k), st);
    const cplx half_pi_i(0.0, 0.5 * pi);
    const cplx pi_i(0.0, pi);
    const cplx lp = 0.5 * (lam + 1.0 / lam), lm = 0.5 * (lam - 1.0 / lam);
    const cplx norm = th.ratio(pi_i, th.iU);
    ModelMatrix M;
    M.m11 = lp * th.ratio(A - half_pi_i - th.iU, A + half_pi_i) * norm;
    M.m12 = lm * th.ratio(-A - half_pi_i - th.iU, -A + half_pi_i) * norm;
    M.m21 = lm * th.ratio(A + half_pi_i - th.iU, A - half_pi_i) * norm;
    M.m22 = lp * th.ratio(-A + half_pi_i - th.iU, -A - half_pi_i) * norm;
    return M;
}

cplx q_mod_from_model(double xi, double t, const ShockParams& p) {
    auto f = [&](double k) {
        const ModelMatrix M = model_matrix_entries(xi, t, cplx(k, 0.0), p);
        return 2.0 * I * k * M.m12;
    };
    // f(k) = L + a/k + b/k^2 + ...: two Richardson steps
    const double k0 = 1e3;
    const cplx f1 = f(k0), f2 = f(2.0 * k0), f4 = f(4.0 * k0);
    const cplx L1 = 2.0 * f2 - f1, L2 = 2.0 * f4 - f2;
    return (4.0 * L2 - L1) / 3.0;
}

}  // namespace mkdv
