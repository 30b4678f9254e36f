#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace mkdv {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Physical setup: step of height c>0 (q = c for x<0, q = 0 for x>=0).
struct ShockParams {
    double c = 1.0;

    explicit ShockParams(double c_ = 1.0) : c(c_) {
        if (!(c > 0.0)) throw std::domain_error("ShockParams: c must be > 0");
    }

    double xi_minus() const { return -0.5 * c * c; }  // plateau/elliptic edge
    double xi_plus() const { return c * c / 3.0; }    // elliptic/vanishing edge
};

// Which side of an oriented branch cut a boundary value is taken from.
// Plus = limit from Re k > 0 (left of the downward-oriented segment [ic,-ic]),
// Minus = limit from Re k < 0. Off = k away from the cut.
enum class Side { Off, Plus, Minus };

struct CutPoint {
    cplx k;
    Side side = Side::Off;

    CutPoint(cplx k_, Side s = Side::Off) : k(k_), side(s) {}
};

// Raised when an adaptive quadrature or iterative solve cannot reach the
// requested tolerance; carries the best estimate and its error bound.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best, double err_bound)
        : std::runtime_error(what), best_estimate(best), error_bound(err_bound) {}
    double best_estimate;
    double error_bound;
};

}  // namespace mkdv
