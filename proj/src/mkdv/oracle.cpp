#include "mkdv/oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "mkdv/modulation.hpp"
#include "mkdv/wavefield.hpp"

namespace mkdv {

void GridSpec::validate() const {
    if (n_points < 1024) throw std::domain_error("GridSpec: n_points must be >= 1024");
    if (n_points & (n_points - 1))
        throw std::domain_error("GridSpec: n_points must be a power of two");
    if (!(half_length > 0.0)) throw std::domain_error("GridSpec: L must be > 0");
    if (!(dealias_fraction > 0.5 && dealias_fraction <= 1.0))
        throw std::domain_error("GridSpec: dealias_fraction must lie in (1/2, 1]");
    if (!(dt > 0.0) || !(t_end >= 0.0)) throw std::domain_error("GridSpec: bad dt/t_end");
    if (dt > dt_bound())
        throw std::domain_error("GridSpec: dt exceeds stability bound const*(L/n)^3");
}

struct MkdvSolver::Impl {
    double c;
    GridSpec grid;
    SolverOptions opts;
    int n, nh;
    double t = 0.0;
    double m0 = 0.0, l20 = 0.0;

    std::vector<double> x;
    std::vector<double> work_r;            // shared real scratch
    std::vector<cplx> qh, a, b, cc, dd, s; // spectra
    std::vector<cplx> E, E2;               // integrating factors for dt/2, dt
    std::vector<double> k3;                // k^3 table
    std::vector<double> kx;                // wavenumbers
    std::vector<char> mask;
    double cached_dt = -1.0;
    double last_max = 0.0;
    FieldSlice checkpoint;

    fftw_plan fwd = nullptr, bwd = nullptr;
    std::vector<double> fft_real;
    std::vector<cplx> fft_cplx;

    Impl(double c_, const GridSpec& g, const SolverOptions& o) : c(c_), grid(g), opts(o) {
        grid.validate();
        n = grid.n_points;
        nh = n / 2 + 1;
        const double L = grid.half_length;
        x.resize(n);
        for (int i = 0; i < n; ++i) x[i] = -L + 2.0 * L * i / n;

        kx.resize(nh);
        k3.resize(nh);
        for (int j = 0; j < nh; ++j) {
            kx[j] = pi * j / L;
            k3[j] = kx[j] * kx[j] * kx[j];
        }
        mask.assign(nh, 1);
        const int cut = static_cast<int>(nh * grid.dealias_fraction);
        for (int j = cut; j < nh; ++j) mask[j] = 0;

        fft_real.resize(n);
        fft_cplx.resize(nh);
        fwd = fftw_plan_dft_r2c_1d(n, fft_real.data(),
                                   reinterpret_cast<fftw_complex*>(fft_cplx.data()),
                                   FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(fft_cplx.data()),
                                   fft_real.data(), FFTW_ESTIMATE);

        // step at 0 with the wide compensating up-step at +frac*L
        const double xu = opts.upstep_pos_frac * L;
        work_r.resize(n);
        for (int i = 0; i < n; ++i) {
            work_r[i] = 0.5 * c * (1.0 - std::tanh(x[i] / opts.eps)) +
                        0.5 * c * (1.0 + std::tanh((x[i] - xu) / opts.upstep_eps));
        }
        qh.resize(nh);
        to_spectral(work_r, qh);
        a.resize(nh);
        b.resize(nh);
        cc.resize(nh);
        dd.resize(nh);
        s.resize(nh);
        E.resize(nh);
        E2.resize(nh);

        m0 = mass_of(qh);
        l20 = l2_of();
        checkpoint = make_slice();
    }
    ~Impl() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }

    void to_spectral(const std::vector<double>& in, std::vector<cplx>& out) {
        std::memcpy(fft_real.data(), in.data(), sizeof(double) * n);
        fftw_execute(fwd);
        std::memcpy(out.data(), fft_cplx.data(), sizeof(cplx) * nh);
    }
    void to_physical(const std::vector<cplx>& in, std::vector<double>& out) {
        std::memcpy(fft_cplx.data(), in.data(), sizeof(cplx) * nh);
        fftw_execute(bwd);
        const double inv = 1.0 / n;
        for (int i = 0; i < n; ++i) out[i] = fft_real[i] * inv;
    }

    // N(qh) = -2 i k FFT( (IFFT qh)^3 ), dealiased on both sides
    void nonlinear(const std::vector<cplx>& in, std::vector<cplx>& out, bool monitor) {
        for (int j = 0; j < nh; ++j) fft_cplx[j] = mask[j] ? in[j] : cplx(0.0);
        fftw_execute(bwd);
        const double inv = 1.0 / n;
        double mx = 0.0;
        for (int i = 0; i < n; ++i) {
            const double v = fft_real[i] * inv;
            if (monitor) mx = std::max(mx, std::fabs(v));
            fft_real[i] = v * v * v;
        }
        if (monitor) last_max = mx;
        fftw_execute(fwd);
        for (int j = 0; j < nh; ++j) {
            out[j] = mask[j] ? cplx(0.0, -2.0 * kx[j]) * fft_cplx[j] : cplx(0.0);
        }
    }

    void prepare_factors(double dt) {
        if (dt == cached_dt) return;
        for (int j = 0; j < nh; ++j) {
            E[j] = std::exp(cplx(0.0, k3[j] * dt * 0.5));
            E2[j] = E[j] * E[j];
        }
        cached_dt = dt;
    }

    void step(double dt) {
        prepare_factors(dt);
        nonlinear(qh, a, true);
        if (!(last_max < opts.blowup_factor * std::max(c, 0.1)) ||
            !std::isfinite(last_max)) {
            throw UnstableRunError(t, checkpoint);
        }
        for (int j = 0; j < nh; ++j) s[j] = E[j] * (qh[j] + 0.5 * dt * a[j]);
        nonlinear(s, b, false);
        for (int j = 0; j < nh; ++j) s[j] = E[j] * qh[j] + 0.5 * dt * b[j];
        nonlinear(s, cc, false);
        for (int j = 0; j < nh; ++j) s[j] = E2[j] * qh[j] + dt * E[j] * cc[j];
        nonlinear(s, dd, false);
        for (int j = 0; j < nh; ++j) {
            qh[j] = E2[j] * qh[j] +
                    (dt / 6.0) * (E2[j] * a[j] + 2.0 * E[j] * (b[j] + cc[j]) + dd[j]);
        }
        t += dt;
    }

    void advance_to(double target) {
        const double dt = grid.dt;
        double next_checkpoint = t + 1.0;
        while (t < target - 0.5 * dt * 1e-9) {
            const double remaining = target - t;
            step(std::min(dt, remaining));
            if (t >= next_checkpoint) {
                checkpoint = make_slice();
                next_checkpoint = t + 1.0;
            }
        }
        t = target;  // absorb the O(dt*1e-9) bookkeeping remainder
        checkpoint = make_slice();
    }

    FieldSlice make_slice() {
        FieldSlice out;
        out.t = t;
        out.x = x;
        out.q.resize(n);
        std::vector<cplx> tmp = qh;
        to_physical(tmp, out.q);
        return out;
    }

    double mass_of(const std::vector<cplx>& spec) const {
        // k=0 mode carries the mean; int q dx = mean * 2L
        return spec[0].real() / n * 2.0 * grid.half_length;
    }
    double l2_of() {
        FieldSlice sl = make_slice();
        double s2 = 0.0;
        for (double v : sl.q) s2 += v * v;
        return s2 * grid.dx();
    }
};

MkdvSolver::MkdvSolver(double c, const GridSpec& grid, const SolverOptions& opts)
    : impl_(std::make_unique<Impl>(c, grid, opts)) {}
MkdvSolver::~MkdvSolver() = default;

void MkdvSolver::advance_to(double t_target) { impl_->advance_to(t_target); }
FieldSlice MkdvSolver::slice() const { return impl_->make_slice(); }
double MkdvSolver::time() const { return impl_->t; }
double MkdvSolver::mass() const { return impl_->mass_of(impl_->qh); }
double MkdvSolver::l2_norm2() const { return impl_->l2_of(); }
double MkdvSolver::mass0() const { return impl_->m0; }
double MkdvSolver::l2_norm2_0() const { return impl_->l20; }

// ---------------- extrema ----------------

std::vector<Extremum> extract_extrema(const FieldSlice& slice, double window_lo,
                                      double window_hi, double c,
                                      double noise_floor_rel, double prominence_rel) {
    const auto& x = slice.x;
    const auto& q = slice.q;
    const size_t n = x.size();
    if (n != q.size() || n < 3) throw std::domain_error("extract_extrema: bad slice");

    size_t i0 = 0, i1 = n;
    while (i0 < n && x[i0] < window_lo) ++i0;
    while (i1 > 0 && x[i1 - 1] > window_hi) --i1;
    if (i1 < i0 + 3) throw std::domain_error("extract_extrema: window has < 3 samples");

    const double floor_abs = noise_floor_rel * std::max(c, 1e-300);
    const double h = x[1] - x[0];

    std::vector<Extremum> ext;
    for (size_t i = i0 + 1; i + 1 < i1; ++i) {
        const bool is_max = q[i] >= q[i - 1] && q[i] > q[i + 1];
        const bool is_min = q[i] <= q[i - 1] && q[i] < q[i + 1];
        if (!is_max && !is_min) continue;
        // quadratic sub-grid refinement
        const double a2 = 0.5 * (q[i - 1] - 2.0 * q[i] + q[i + 1]);
        const double b2 = 0.5 * (q[i + 1] - q[i - 1]);
        double xe = x[i], qe = q[i];
        if (a2 != 0.0) {
            const double dxf = -b2 / (2.0 * a2);
            if (std::fabs(dxf) <= 1.0) {
                xe += dxf * h;
                qe -= b2 * b2 / (4.0 * a2);
            }
        }
        if (std::fabs(qe) < floor_abs && std::fabs(q[i]) < floor_abs) continue;
        ext.push_back({xe, qe, is_max ? Extremum::Kind::Max : Extremum::Kind::Min});
    }

    auto merge_runs = [](std::vector<Extremum>& v) {
        std::vector<Extremum> out;
        for (const auto& e : v) {
            if (!out.empty() && out.back().kind == e.kind) {
                const bool keep_new = (e.kind == Extremum::Kind::Max)
                                          ? e.q > out.back().q
                                          : e.q < out.back().q;
                if (keep_new) out.back() = e;
            } else {
                out.push_back(e);
            }
        }
        v = std::move(out);
    };
    merge_runs(ext);

    // drop the lowest-prominence adjacent pair until all pairs are genuine
    const double prom_abs = prominence_rel * std::max(c, 1e-300);
    for (;;) {
        int best = -1;
        double best_p = prom_abs;
        for (size_t j = 0; j + 1 < ext.size(); ++j) {
            const double pr = std::fabs(ext[j].q - ext[j + 1].q);
            if (pr < best_p) {
                best_p = pr;
                best = static_cast<int>(j);
            }
        }
        if (best < 0) break;
        ext.erase(ext.begin() + best, ext.begin() + best + 2);
        merge_runs(ext);
    }
    return ext;
}

// ---------------- comparisons ----------------

namespace {

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

EnvelopeReport compare_envelope(const FieldSlice& slice, const ShockParams& p,
                                double edge_width, double prominence_rel) {
    const double t = slice.t;
    const double c2 = p.c * p.c;
    const double xi_lo = -0.5 * c2 + edge_width * c2;
    const double xi_hi = c2 / 3.0 - edge_width * c2;
    const double wlo = 12.0 * t * xi_lo, whi = 12.0 * t * xi_hi;

    EnvelopeReport rep;
    std::vector<Extremum> ext;
    try {
        ext = extract_extrema(slice, wlo, whi, p.c, 1e-6, prominence_rel);
    } catch (const std::domain_error&) {
        return rep;
    }
    std::vector<double> ra, rp;
    for (const auto& e : ext) {
        const double xi = e.x / (12.0 * t);
        if (!(xi > xi_lo && xi < xi_hi)) continue;
        const double d = resolve_state(xi, p).d;
        const double pred = e.kind == Extremum::Kind::Max ? p.c + d : p.c - d;
        EnvelopeEntry en;
        en.x = e.x;
        en.xi = xi;
        en.q = e.q;
        en.kind = e.kind;
        en.predicted = pred;
        en.abs_err = std::fabs(e.q - pred);
        en.rel_to_pred = pred != 0.0 ? en.abs_err / std::fabs(pred) : INFINITY;
        en.rel_to_amp = en.abs_err / (p.c + d);
        rep.entries.push_back(en);
        ra.push_back(en.rel_to_amp);
        rp.push_back(en.rel_to_pred);
    }
    if (rep.entries.empty()) return rep;
    rep.empty = false;
    rep.median_rel_amp = median_of(ra);
    rep.max_rel_amp = *std::max_element(ra.begin(), ra.end());
    rep.median_rel_pred = median_of(rp);
    rep.max_rel_pred = *std::max_element(rp.begin(), rp.end());
    return rep;
}

WavelengthReport compare_wavelength(const FieldSlice& slice, const ShockParams& p,
                                    double edge_width, double prominence_rel) {
    const double t = slice.t;
    const double c2 = p.c * p.c;
    const double xi_lo = -0.5 * c2 + edge_width * c2;
    const double xi_hi = c2 / 3.0 - edge_width * c2;

    WavelengthReport rep;
    std::vector<Extremum> ext;
    try {
        ext = extract_extrema(slice, 12.0 * t * xi_lo, 12.0 * t * xi_hi, p.c, 1e-6,
                              prominence_rel);
    } catch (const std::domain_error&) {
        return rep;
    }
    std::vector<double> maxima;
    for (const auto& e : ext)
        if (e.kind == Extremum::Kind::Max) maxima.push_back(e.x);
    if (maxima.size() < 3) return rep;  // insufficient-data flag stays set

    std::vector<double> errs;
    for (size_t j = 0; j + 1 < maxima.size(); ++j) {
        const double xm = 0.5 * (maxima[j] + maxima[j + 1]);
        const double xim = xm / (12.0 * t);
        if (!(xim > xi_lo && xim < xi_hi)) continue;
        WavelengthEntry en;
        en.x_mid = xm;
        en.xi_mid = xim;
        en.spacing = maxima[j + 1] - maxima[j];
        en.predicted = local_wavelength(xim, t, p);
        en.rel_err = std::fabs(en.spacing - en.predicted) / en.predicted;
        rep.entries.push_back(en);
        errs.push_back(en.rel_err);
    }
    if (errs.empty()) return rep;
    rep.insufficient_data = false;
    rep.median_rel = median_of(errs);
    rep.max_rel = *std::max_element(errs.begin(), errs.end());
    return rep;
}

double window_mean(const FieldSlice& slice, double lo, double hi) {
    double s = 0.0;
    size_t n = 0;
    for (size_t i = 0; i < slice.x.size(); ++i) {
        if (slice.x[i] > lo && slice.x[i] < hi) {
            s += slice.q[i];
            ++n;
        }
    }
    if (n == 0) throw std::domain_error("window_mean: empty window");
    return s / n;
}

double window_max_abs(const FieldSlice& slice, double lo, double hi) {
    double m = 0.0;
    bool any = false;
    for (size_t i = 0; i < slice.x.size(); ++i) {
        if (slice.x[i] > lo && slice.x[i] < hi) {
            m = std::max(m, std::fabs(slice.q[i]));
            any = true;
        }
    }
    if (!any) throw std::domain_error("window_max_abs: empty window");
    return m;
}

}  // namespace mkdv
