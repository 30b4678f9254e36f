#include "mkdv/quadrature.hpp"

#include <cmath>
#include <vector>

namespace mkdv {
namespace {

// Kronrod-15 nodes on [0,1] of |x| and weights; Gauss-7 weights at the
// odd-indexed nodes.
constexpr double kron_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kron_w[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double gauss_w[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename V>
struct GKResult {
    V value;
    double err;
};

template <typename V>
GKResult<V> gk15(const std::function<V(double)>& f, double a, double b) {
    const double hc = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    V fv[15];
    bool bad = false;
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(mid - hc * kron_x[i]);
        fv[14 - i] = f(mid + hc * kron_x[i]);
    }
    fv[7] = f(mid);
    for (auto& v : fv) {
        if (!std::isfinite(std::abs(v))) {
            v = V{};  // keep the panel summable; the inf error forces a split
            bad = true;
        }
    }
    V kr = kron_w[7] * fv[7];
    V gs = gauss_w[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        kr += kron_w[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) gs += gauss_w[i / 2] * (fv[i] + fv[14 - i]);
    }
    kr *= hc;
    gs *= hc;
    return {kr, bad ? INFINITY : std::abs(kr - gs)};
}

template <typename V>
struct Panel {
    double a, b;
    V value;
    double err;
    int depth;
};

// Global adaptation: keep splitting the worst panel until the summed error
// estimate meets the budget. Panels at their rounding floor are frozen so a
// tight budget cannot force unbounded subdivision.
template <typename V>
V integrate_regular(const std::function<V(double)>& f, double a, double b,
                    const QuadratureSpec& spec) {
    if (a == b) return V{};
    auto first = gk15<V>(f, a, b);
    std::vector<Panel<V>> active{{a, b, first.value, first.err, 0}};
    V frozen_val{};
    double frozen_err = 0.0;

    const size_t max_panels = 4096;
    for (size_t iter = 0; iter < max_panels; ++iter) {
        V total = frozen_val;
        double err = frozen_err;
        for (const auto& p : active) {
            total += p.value;
            err += p.err;
        }
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (err <= tol || active.empty()) return total;

        size_t worst = 0;
        for (size_t i = 1; i < active.size(); ++i)
            if (active[i].err > active[worst].err) worst = i;
        // global rounding floor: no finite split can improve past this
        if (active[worst].err <= 5e-16 * std::abs(total) + 1e-300) return total;
        const Panel<V> p = active[worst];
        active.erase(active.begin() + worst);

        if (p.depth >= spec.max_depth)
            throw ConvergenceError("quadrature: max depth exhausted", std::abs(total),
                                   err);
        const double mid = 0.5 * (p.a + p.b);
        auto left = gk15<V>(f, p.a, mid);
        auto right = gk15<V>(f, mid, p.b);
        auto push = [&](double lo, double hi, const GKResult<V>& r, int depth) {
            if (!std::isfinite(r.err) || r.err <= 5e-16 * std::abs(r.value) ||
                hi - lo < 1e-14 * (b - a)) {
                frozen_val += r.value;
                frozen_err += std::isfinite(r.err) ? r.err : 0.0;
            } else {
                active.push_back({lo, hi, r.value, r.err, depth});
            }
        };
        push(p.a, mid, left, p.depth + 1);
        push(mid, p.b, right, p.depth + 1);
    }
    // panel budget exhausted: report the best estimate
    V total = frozen_val;
    double err = frozen_err;
    for (const auto& p : active) {
        total += p.value;
        err += p.err;
    }
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (err > 100.0 * tol)
        throw ConvergenceError("quadrature: panel budget exhausted", std::abs(total), err);
    return total;
}

template <typename V>
V integrate_impl(const std::function<V(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
    if (a == b) return V{};
    if (b < a) return -integrate_impl<V>(f, b, a, spec);

    if (spec.singular_left && spec.singular_right) {
        const double mid = 0.5 * (a + b);
        return integrate_impl<V>(f, a, mid, spec.with_singularities(true, false)) +
               integrate_impl<V>(f, mid, b, spec.with_singularities(false, true));
    }
    if (spec.singular_left) {
        // x = a + u^2, dx = 2u du
        std::function<V(double)> g = [&f, a](double u) { return f(a + u * u) * (2.0 * u); };
        return integrate_regular<V>(g, 0.0, std::sqrt(b - a), spec);
    }
    if (spec.singular_right) {
        // x = b - u^2
        std::function<V(double)> g = [&f, b](double u) { return f(b - u * u) * (2.0 * u); };
        return integrate_regular<V>(g, 0.0, std::sqrt(b - a), spec);
    }
    return integrate_regular<V>(f, a, b, spec);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
    return integrate_impl<double>(f, a, b, spec);
}

cplx integrate_cplx(const std::function<cplx(double)>& f, double a, double b,
                    const QuadratureSpec& spec) {
    return integrate_impl<cplx>(f, a, b, spec);
}

cplx path_integral(const std::function<cplx(cplx)>& f, cplx z0, cplx z1,
                   const QuadratureSpec& spec, bool from_branch_point) {
    const cplx dz = z1 - z0;
    if (dz == 0.0) return 0.0;
    if (!from_branch_point) {
        return integrate_cplx([&](double t) { return f(z0 + t * dz) * dz; }, 0.0, 1.0,
                              spec);
    }
    // s = z0 + u^2 dz, ds = 2u dz du; the 1/sqrt(s-z0) blowup becomes regular.
    return integrate_cplx([&](double u) { return f(z0 + (u * u) * dz) * (2.0 * u * dz); },
                          0.0, 1.0, spec);
}

}  // namespace mkdv
