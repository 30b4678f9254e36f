#pragma once

#include <memory>
#include <vector>

#include "mkdv/types.hpp"

namespace mkdv {

// Direct numerical ground truth: periodic pseudospectral integrating-factor
// RK4 solver for q_t + 6 q^2 q_x + q_xxx = 0 on [-L, L), smoothed step data.
// The third derivative is integrated exactly in Fourier space; the cubic
// nonlinearity -2 (q^3)_x is stepped explicitly with 2/3-rule dealiasing.

struct GridSpec {
    double half_length = 512.0;  // domain [-L, L)
    int n_points = 8192;         // power of two, >= 1024
    double dt = 5e-4;
    double t_end = 40.0;
    double dealias_fraction = 2.0 / 3.0;  // in (1/2, 1]
    double stability_const = 8.0;        // enforced bound dt <= const*(L/n)^3

    void validate() const;
    double dx() const { return 2.0 * half_length / n_points; }
    double dt_bound() const {
        const double h = half_length / n_points;
        return stability_const * h * h * h;
    }
};

struct FieldSlice {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> q;
};

struct SolverOptions {
    double eps = 0.5;             // smoothing width of the physical step at x=0
    double upstep_pos_frac = 0.8; // compensating up-step at +frac*L
    double upstep_eps = 4.0;      // wide, so its leftward radiation is negligible
    double blowup_factor = 10.0;  // abort when max|q| exceeds factor*max(c, 0.1)
};

class UnstableRunError : public std::runtime_error {
public:
    UnstableRunError(double t_blowup, FieldSlice last_good)
        : std::runtime_error("mkdv solver: blow-up detected"),
          t(t_blowup),
          last_good_slice(std::move(last_good)) {}
    double t;
    FieldSlice last_good_slice;
};

class MkdvSolver {
public:
    // c = 0 is allowed (zero solution preserved); asymptotic evaluators
    // require c > 0 separately
    MkdvSolver(double c, const GridSpec& grid, const SolverOptions& opts = {});
    ~MkdvSolver();
    MkdvSolver(const MkdvSolver&) = delete;
    MkdvSolver& operator=(const MkdvSolver&) = delete;

    void advance_to(double t_target);
    FieldSlice slice() const;
    double time() const;

    double mass() const;     // int q dx, conserved exactly by the scheme
    double l2_norm2() const; // int q^2 dx, conserved by MKdV
    double mass0() const;
    double l2_norm2_0() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// ---- extrema and comparison ----

struct Extremum {
    double x;
    double q;
    enum class Kind { Max, Min } kind;
};

// Interior local extrema with quadratic sub-grid refinement. Alternation is
// enforced by merging same-kind runs; adjacent pairs closer than
// prominence*c are treated as ripple and removed. noise_floor is the hard
// amplitude floor below which extrema are ignored outright.
std::vector<Extremum> extract_extrema(const FieldSlice& slice, double window_lo,
                                      double window_hi, double c,
                                      double noise_floor_rel = 1e-6,
                                      double prominence_rel = 0.1);

struct EnvelopeEntry {
    double x, xi, q, predicted;
    Extremum::Kind kind;
    double abs_err, rel_to_pred, rel_to_amp;  // rel_to_amp normalizes by c+d(xi)
};

struct EnvelopeReport {
    std::vector<EnvelopeEntry> entries;
    double median_rel_amp = 0, max_rel_amp = 0;
    double median_rel_pred = 0, max_rel_pred = 0;
    bool empty = true;
};

struct WavelengthEntry {
    double x_mid, xi_mid, spacing, predicted, rel_err;
};

struct WavelengthReport {
    std::vector<WavelengthEntry> entries;
    double median_rel = 0, max_rel = 0;
    bool insufficient_data = true;
};

// prediction c +- d(xi) at each extremum inside the elliptic region minus the
// boundary band
EnvelopeReport compare_envelope(const FieldSlice& slice, const ShockParams& p,
                                double edge_width = 0.01, double prominence_rel = 0.1);

// consecutive-maxima spacings against 2*pi/|dU/dx| at the midpoint
WavelengthReport compare_wavelength(const FieldSlice& slice, const ShockParams& p,
                                    double edge_width = 0.01,
                                    double prominence_rel = 0.1);

double window_mean(const FieldSlice& slice, double lo, double hi);
double window_max_abs(const FieldSlice& slice, double lo, double hi);

}  // namespace mkdv
