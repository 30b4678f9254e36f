#pragma once

#include <string>
#include <utility>

#include "mkdv/quadrature.hpp"
#include "mkdv/scattering.hpp"
#include "mkdv/types.hpp"

namespace mkdv {

// Genus-1 machinery of the elliptic region -c^2/2 < xi < c^2/3 on the surface
// w^2 = (k^2+c^2)(k^2+d^2), cuts (ic,id) and (-id,-ic), first sheet fixed by
// w(0) > 0. Cycle convention: the a-cycle threads the gap (-id,id) through
// both sheets, the b-cycle loops around the cut (id,ic); then
// tau = 2*pi*i * (b-period)/(a-period) is real negative and satisfies
// tau = -2*pi*K(1-m)/K(m) with m = 4cd/(c+d)^2.

struct SurfaceSpec {
    double c;
    double d;
    enum class Sheet { First, Second } sheet = Sheet::First;

    SurfaceSpec(double c_, double d_, Sheet s = Sheet::First)
        : c(c_), d(d_), sheet(s) {
        if (!(d > 0.0 && d < c))
            throw std::domain_error("SurfaceSpec: requires 0 < d < c");
    }
};

// All xi-dependent quantities of the modulated wave, resolved once per xi.
struct ModulationState {
    double c = 0, xi = 0;
    double d = 0, mu = 0;
    double m = 0;           // elliptic parameter 4cd/(c+d)^2
    double tau = 0;         // b-period of the normalized differential, < 0
    double e0 = 0;          // second-kind normalization constant, in (0, d^2)
    double B_g = 0;         // gap jump of g, > 0
    double B_Omega = 0;     // gap jump of Omega, < 0
    double Delta = 0;       // (1/2pi) int log a^2 / w, < 0
    double I_cut = 0;       // int_d^c dy / sqrt((c^2-y^2)(y^2-d^2))
    double I_gap = 0;       // int_{-d}^{d} dy / sqrt((c^2-y^2)(d^2-y^2))
    cplx a_period{0, 0};    // -2i * I_gap
    cplx b_period{0, 0};    // 2 * I_cut
};

// F(mu,d) = int_0^1 (mu^2 - l^2 d^2) sqrt((1-l^2)/(c^2-l^2 d^2)) dl;
// strictly increasing in mu, strictly decreasing in d.
double F_constraint(double mu, double d, const ShockParams& p);

// the root of F(.,d): mu^2 = ratio of the two defining quadratures
double mu_of_d(double d, const ShockParams& p);

// unique d in (0,c) with mu^2(d) + d^2/2 = c^2/2 + xi (bisection + secant)
double d_of_xi(double xi, const ShockParams& p);

// full state; memoized per (c, xi), spillable to MKDV_CACHE_DIR
ModulationState resolve_state(double xi, const ShockParams& p);

// state built directly from d (degenerate-limit studies bypass the xi solve)
ModulationState state_from_d(double d, const ShockParams& p);

// empty when all range/sign invariants hold, else a ';'-joined list
std::string state_violations(const ModulationState& st);

cplx w_surface(const CutPoint& pt, const SurfaceSpec& spec);

struct Periods {
    cplx a_period;
    cplx b_period;
    double tau;
};
Periods periods(const SurfaceSpec& spec);

// e0 from int_0^{id} (s^2+e0)/w ds = 0, and the constant gap jump of Omega
std::pair<double, double> e0_and_B_Omega(const SurfaceSpec& spec);

double B_g_from(const ModulationState& st);
// the same integral in the normalized variable t = y/c (cross-check form)
double B_g_alt_form(const ModulationState& st);

double Delta_from(double d, const ShockParams& p);

// g(k,xi) = int_{ic}^k 12 (s^2+mu^2)(s^2+d^2)/w ds, path avoiding (-ic, ic);
// side-tagged boundary values on the segment
cplx g_elliptic(const CutPoint& pt, const ModulationState& st);
// g - theta evaluated without cancellation (their difference is O(1/k))
cplx g_minus_theta(cplx k, const ModulationState& st);
// true when k lies on the closed segment [-ic, ic] and so needs a side
bool g_ell_needs_side(cplx k, const ModulationState& st);

// Omega(k) = int_{ic}^k (s^2+e0)/w ds; same path rules as g
cplx Omega_fn(const CutPoint& pt, const ModulationState& st);

// Abel map A(P) = int_{ic}^P omega, omega = 2*pi*i (dk/w)/a_period, reduced
// mod 2*pi*i Z + tau Z
cplx abel_map(const CutPoint& pt, const ModulationState& st);
cplx abel_map_infinity(const ModulationState& st);

// U = t B_g(xi) + B_Omega(xi) Delta(xi) with xi = x/12t
double U_phase(double x, double t, const ShockParams& p);

}  // namespace mkdv
