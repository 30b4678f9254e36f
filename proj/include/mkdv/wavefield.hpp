#pragma once

#include <string>

#include "mkdv/modulation.hpp"
#include "mkdv/types.hpp"

namespace mkdv {

// User-facing asymptotic solution q(x,t): region classification by
// xi = x/12t against the edges -c^2/2 and c^2/3, the modulated elliptic wave
// in theta and Jacobi-dn form, plateau/vanishing values, and the model-matrix
// entries used for reconstruction checks.

enum class Region { Plateau, Elliptic, Vanishing, BoundaryLayer };

struct RegionLabel {
    Region tag;
    // distance of xi to the nearest edge in units of c^2, positive strictly
    // inside the elliptic interval, negative outside
    double boundary_distance;
};

const char* region_name(Region r);

RegionLabel classify(double x, double t, double c, double edge_width = 0.01);

struct WaveSample {
    double x = 0, t = 0;
    double q = 0;
    RegionLabel region{Region::Plateau, 0};
    double envelope_lo = 0, envelope_hi = 0;  // meaningful only in Elliptic
    double wavelength = 0;                    // spatial crest period, Elliptic only
    bool low_confidence = false;              // set inside the boundary band
    std::string error_order;                  // leading-order error metadata
};

// q_mod = sqrt(c^2-d^2) Theta(pi i + iU)/Theta(iU); canonical evaluator
double q_mod_theta(double x, double t, const ShockParams& p);
double q_mod_theta_from(double U, const ModulationState& st);

// q_mod = (c+d) dn(K(m)(U/pi+1)|m) = (c-d)/dn(K(m)U/pi|m); evaluates both
// printed forms, returns the first, throws when they disagree
double q_mod_dn(double x, double t, const ShockParams& p);
double q_mod_dn_from(double U, const ModulationState& st);

WaveSample q_asymptotic(double x, double t, const ShockParams& p,
                        double edge_width = 0.01);

// (c - d(xi), c + d(xi))
std::pair<double, double> envelope(double xi, const ShockParams& p);

// dU/dx = B_g'(xi)/12 + (B_Omega Delta)'(xi)/(12 t), central differences on
// the memoized states. Negative throughout: B_g decreases in xi.
double local_dU_dx(double xi, double t, const ShockParams& p);

// spatial crest-to-crest period 2*pi/|dU/dx| (the theta ratio has period
// 2*pi in U)
double local_wavelength(double xi, double t, const ShockParams& p);

struct ModelMatrix {
    cplx m11, m12, m21, m22;
};

// model solution entries built from gamma(k) = ((k-ic)/(k-id))^{1/4}
// ((k+id)/(k+ic))^{1/4} and from lambda(k) = ((k-ic)/(k+ic))^{1/4}
// ((k-id)/(k+id))^{1/4}; both reproduce q_mod via 2i lim k M_12
ModelMatrix model_matrix_entries(double xi, double t, cplx k, const ShockParams& p);
ModelMatrix model_matrix_entries_lambda(double xi, double t, cplx k,
                                        const ShockParams& p);

// Richardson-extrapolated 2i k M_12 as k -> infinity
cplx q_mod_from_model(double xi, double t, const ShockParams& p);

}  // namespace mkdv
