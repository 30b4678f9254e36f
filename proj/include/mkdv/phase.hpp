#pragma once

#include <vector>

#include "mkdv/quadrature.hpp"
#include "mkdv/scattering.hpp"
#include "mkdv/types.hpp"

namespace mkdv {

// Zero-genus (plateau-region) phase machinery around xi = x/12t < -c^2/2:
// theta(k,xi) = 4k^3 + 12k xi, g_c = (4k^2 - 2c^2 + 12 xi) X(k), the scalar
// functions delta/chi/nu on [-lambda, lambda], and F solving the scalar RH
// problem F_- F_+ = h delta^{-2} on the cut.

cplx theta_phase(cplx k, double xi);

// lambda(xi) = sqrt(-xi - c^2/2); zeros of dg_c sit at 0, +-lambda.
double lambda_stationary(double xi, const ShockParams& p);

cplx g_c(const CutPoint& pt, double xi, const ShockParams& p);

// nu = (1/2pi) ln(1 + |r(lambda)|^2)
double nu_of_xi(double xi, const ShockParams& p);

// chi and delta off the real segment [-lambda, lambda]
cplx chi_fn(cplx k, double xi, const ShockParams& p);
cplx delta_fn(cplx k, double xi, const ShockParams& p);

// boundary values on the open segment (-lambda, lambda); from_above = limit
// from Im k > 0 (the RH "+" side of the real axis)
cplx delta_boundary(double s0, double xi, const ShockParams& p, bool from_above);

// F of the scalar RH problem, k off R and off [-ic, ic]
cplx F_plateau(cplx k, double xi, const ShockParams& p);

// boundary value of F at k = i y0 on the open cut, side Plus/Minus
cplx F_plateau_boundary(double y0, Side side, double xi, const ShockParams& p);

// the two vanishing symmetry integrals behind F(inf) = 1
double sym_integral_real(const ShockParams& p);
double sym_integral_cut(double xi, const ShockParams& p);

// ---- signature tables ----

enum class PhaseKind { Theta, Gc, Gell };

struct SignGridSpec {
    double re_min, re_max, im_min, im_max;
    int nx = 41, ny = 41;
    double zero_tol_rel = 1e-9;  // zero tag when |Im phase| <= tol * local scale
};

struct SignGrid {
    double re_min, re_max, im_min, im_max;
    int nx, ny;
    std::vector<int> values;  // row-major, ny rows of nx entries in {-1,0,1}

    int at(int ix, int iy) const { return values[static_cast<size_t>(iy) * nx + ix]; }
};

SignGrid signature_grid(PhaseKind which, double xi, const ShockParams& p,
                        const SignGridSpec& spec);

}  // namespace mkdv
