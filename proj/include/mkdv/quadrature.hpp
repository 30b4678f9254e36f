#pragma once

#include <functional>

#include "mkdv/types.hpp"

namespace mkdv {

// Adaptive Gauss-Kronrod (7-15) bisection. Declared endpoint singularities of
// inverse-square-root type are removed by the substitution u^2 = x - endpoint
// before the adaptive pass; every Abelian integral in this library has at most
// that endpoint behavior.
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_depth = 48;
    bool singular_left = false;
    bool singular_right = false;

    QuadratureSpec with_singularities(bool left, bool right) const {
        QuadratureSpec s = *this;
        s.singular_left = left;
        s.singular_right = right;
        return s;
    }
};

// Integral of f over (a,b). Throws ConvergenceError on depth exhaustion,
// carrying the best estimate and its error bound.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

// Complex-valued integrand of a real variable, same contract.
cplx integrate_cplx(const std::function<cplx(double)>& f, double a, double b,
                    const QuadratureSpec& spec = {});

// Integral of f along the straight segment [z0, z1]. When from_branch_point is
// set, f is assumed O(1/sqrt(s - z0)) at z0 and the parametrization
// s = z0 + u^2 * (z1 - z0) regularizes it.
cplx path_integral(const std::function<cplx(cplx)>& f, cplx z0, cplx z1,
                   const QuadratureSpec& spec = {}, bool from_branch_point = false);

}  // namespace mkdv
