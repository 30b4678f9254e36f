#pragma once

#include "mkdv/types.hpp"

namespace mkdv {

// Theta convention of this library: Theta(z, tau) = sum_m exp(tau m^2 / 2 + z m)
// with real tau < 0, quasi-periods 2*pi*i and tau. This is NOT the classical
// nome convention; the map to the classical theta3 is
//   Theta(z, tau) = theta3(-i z / 2 | tau_cl),  tau_cl = i |tau| / (2 pi),
// i.e. nome q = exp(tau/2).
struct ThetaParams {
    double tau;
    double truncation_tol = 1e-15;

    explicit ThetaParams(double tau_, double tol = 1e-15)
        : tau(tau_), truncation_tol(tol) {
        if (!(tau < 0.0)) throw std::domain_error("ThetaParams: tau must be < 0");
        if (!(truncation_tol > 0.0))
            throw std::domain_error("ThetaParams: truncation_tol must be > 0");
    }
};

// Scaled value m * exp(s): keeps theta ratios finite when quasi-period
// reductions produce huge prefactors.
struct ScaledCplx {
    cplx mantissa;
    double log_scale = 0.0;

    cplx value() const { return mantissa * std::exp(log_scale); }
};

// Plain truncated symmetric sum (fast only for tau <= -2*pi).
cplx theta_direct(cplx z, const ThetaParams& p);

// Modular-transformed series: Theta(z,tau) =
//   Theta(2*pi*i*z/tau, 4*pi^2/tau) * sqrt(2*pi/-tau) * exp(-z^2/(2*tau)).
cplx theta_poisson(cplx z, const ThetaParams& p);

// Canonical evaluator: argument reduction by the quasi-periods, then the
// direct series when tau <= -2*pi and the Poisson-transformed one otherwise.
cplx theta(cplx z, const ThetaParams& p);

// Same with the exponential prefactors kept in log scale.
ScaledCplx theta_scaled(cplx z, const ThetaParams& p);

// Theta(z1)/Theta(z2), stable for arguments needing large reductions.
cplx theta_ratio(cplx z1, cplx z2, const ThetaParams& p);

// Number of series terms the last-resort sum would use at this argument;
// probe for the direct-vs-Poisson convergence comparison.
int theta_direct_term_count(cplx z, const ThetaParams& p);

// Complete elliptic integral K(m), parameter convention
// K(m) = int_0^{pi/2} (1 - m sin^2 t)^{-1/2} dt, via the AGM.
double complete_elliptic_K(double m);

// Jacobi dn(u | m), parameter convention, descending Landen recursion
// (depth cap 32); periodic with period 2K(m), range [sqrt(1-m), 1].
double jacobi_dn(double u, double m);

}  // namespace mkdv
