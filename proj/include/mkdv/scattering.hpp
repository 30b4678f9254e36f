#pragma once

#include "mkdv/types.hpp"

namespace mkdv {

// Explicit spectral data of the pure step. Branches: X(k) = sqrt(k^2+c^2) with
// cut [-ic,ic], X(1) > 0, X ~ k at infinity; kappa(k) = ((k-ic)/(k+ic))^{1/4}
// with the same cut and kappa(inf) = 1. Boundary values on the cut carry a
// Side tag (Plus = limit from Re k > 0). Evaluation exactly at the branch
// points +-ic returns 0 (degenerate marker, see at_branch_point).

bool at_branch_point(cplx k, const ShockParams& p);

// sqrt(k^2 + a^2) with cut [-ia, ia], ~ k at infinity, positive at k = 1;
// side-tagged boundary values +-sqrt(a^2 - y^2) on the open cut. X below is
// the a = c case; the genus-1 surface root reuses it with a = d.
cplx sqrt_cut_branch(cplx k, double a, Side side);

cplx X(const CutPoint& pt, const ShockParams& p);
cplx kappa(const CutPoint& pt, const ShockParams& p);

cplx a_coeff(const CutPoint& pt, const ShockParams& p);
cplx b_coeff(const CutPoint& pt, const ShockParams& p);
cplx r_coeff(const CutPoint& pt, const ShockParams& p);

// f(k) = i/(a_-(k) a_+(k)) on the cut; requires a side-tagged point.
cplx f_jump(const CutPoint& pt, const ShockParams& p);

// Analytic continuation of f off the cut: f_hat(k) = (2i/c) X(k); on the cut
// f_hat_+ = f.
cplx f_hat(const CutPoint& pt, const ShockParams& p);

}  // namespace mkdv
