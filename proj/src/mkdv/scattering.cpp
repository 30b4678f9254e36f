#include "mkdv/scattering.hpp"

#include <cmath>

namespace mkdv {
namespace {

void check_side(const CutPoint& pt, const ShockParams& p) {
    if (pt.side == Side::Off) return;
    if (pt.k.real() != 0.0 || std::fabs(pt.k.imag()) > p.c)
        throw std::domain_error("CutPoint: side tag only valid on the segment [-ic, ic]");
}

bool on_open_cut(cplx k, const ShockParams& p) {
    return k.real() == 0.0 && std::fabs(k.imag()) < p.c;
}

}  // namespace

bool at_branch_point(cplx k, const ShockParams& p) {
    return k == cplx(0.0, p.c) || k == cplx(0.0, -p.c);
}

cplx sqrt_cut_branch(cplx k, double a, Side side) {
    if (k == cplx(0.0, a) || k == cplx(0.0, -a)) return 0.0;
    if (side != Side::Off && k.real() == 0.0 && std::fabs(k.imag()) < a) {
        const double v = std::sqrt(a * a - k.imag() * k.imag());
        return side == Side::Plus ? cplx(v, 0.0) : cplx(-v, 0.0);
    }
    if (k.real() == 0.0 && std::fabs(k.imag()) < a)
        throw std::domain_error("sqrt_cut_branch: point on the open cut needs a side tag");
    // principal sqrt(k^2+a^2) carries the complementary cut; flipping the sign
    // on Re k < 0 (and on the lower imaginary axis) moves it onto [-ia, ia]
    // and gives ~ k at infinity, positive at k = 1.
    const cplx P = std::sqrt(k * k + a * a);
    const bool plus = k.real() > 0.0 || (k.real() == 0.0 && k.imag() > 0.0);
    return plus ? P : -P;
}

cplx X(const CutPoint& pt, const ShockParams& p) {
    check_side(pt, p);
    return sqrt_cut_branch(pt.k, p.c, pt.side);
}

cplx kappa(const CutPoint& pt, const ShockParams& p) {
    check_side(pt, p);
    const cplx k = pt.k;
    if (at_branch_point(k, p)) return 0.0;
    if (pt.side != Side::Off) {
        const double y = k.imag();
        const double mag = std::pow((p.c - y) / (p.c + y), 0.25);
        // (k-ic)/(k+ic) is negative real on the cut; the Plus limit approaches
        // it from below (arg -> -pi), the Minus limit from above. kappa_- = i kappa_+.
        const double ang = (pt.side == Side::Plus) ? -0.25 * pi : 0.25 * pi;
        return mag * std::exp(cplx(0.0, ang));
    }
    if (on_open_cut(k, p))
        throw std::domain_error("kappa: point on the open cut needs a side tag");
    const cplx w = (k - cplx(0.0, p.c)) / (k + cplx(0.0, p.c));
    return std::pow(w, 0.25);
}

cplx a_coeff(const CutPoint& pt, const ShockParams& p) {
    const cplx kp = kappa(pt, p);
    if (kp == 0.0) return 0.0;  // branch-point marker propagates
    return 0.5 * (kp + 1.0 / kp);
}

cplx b_coeff(const CutPoint& pt, const ShockParams& p) {
    const cplx kp = kappa(pt, p);
    if (kp == 0.0) return 0.0;
    return 0.5 * (kp - 1.0 / kp);
}

cplx r_coeff(const CutPoint& pt, const ShockParams& p) {
    const cplx kp = kappa(pt, p);
    if (kp == 0.0) return 0.0;
    const cplx k2 = kp * kp;
    return (k2 - 1.0) / (k2 + 1.0);
}

cplx f_jump(const CutPoint& pt, const ShockParams& p) {
    if (pt.side == Side::Off)
        throw std::domain_error("f_jump: defined only on the cut, side tag required");
    const cplx am = a_coeff(CutPoint(pt.k, Side::Minus), p);
    const cplx ap = a_coeff(CutPoint(pt.k, Side::Plus), p);
    return cplx(0.0, 1.0) / (am * ap);
}

cplx f_hat(const CutPoint& pt, const ShockParams& p) {
    return cplx(0.0, 2.0 / p.c) * X(pt, p);
}

}  // namespace mkdv
