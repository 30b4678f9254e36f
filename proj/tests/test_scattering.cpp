#include <doctest.h>

#include <cmath>
#include <vector>

#include "mkdv/scattering.hpp"

using namespace mkdv;

namespace {
const ShockParams P1(1.0);
const cplx I{0.0, 1.0};

std::vector<cplx> sample_points() {
    return {cplx(0.3, 0.2),  cplx(-1.2, 0.7), cplx(2.0, -1.5), cplx(-0.4, -2.2),
            cplx(5.0, 0.01), cplx(0.05, 3.0), cplx(-3.0, -0.3), cplx(1.0, 1.0)};
}
}  // namespace

TEST_CASE("X: normalization X(1) > 0 and leading symbol") {
    CHECK(std::abs(X(CutPoint(cplx(1.0)), P1) - std::sqrt(2.0)) < 1e-15);
    for (cplx k : {cplx(1e6, 0.0), cplx(-1e6, 0.0), cplx(0.0, 1e6), cplx(3e5, -4e5)}) {
        CHECK(std::abs(X(CutPoint(k), P1) / k - 1.0) < 1e-9);
    }
}

TEST_CASE("X: boundary values and cut relation X_+ = -X_-") {
    CHECK(std::abs(X(CutPoint(cplx(0.0), Side::Plus), P1) - 1.0) < 1e-15);
    for (int i = 1; i <= 20; ++i) {
        const double y = -1.0 + 2.0 * i / 21.0;
        const cplx xp = X(CutPoint(cplx(0.0, y), Side::Plus), P1);
        const cplx xm = X(CutPoint(cplx(0.0, y), Side::Minus), P1);
        CHECK(std::abs(xp + xm) < 1e-15);
        CHECK(xp.real() > 0.0);
    }
}

TEST_CASE("X: side values continue the open half-planes") {
    for (double y : {-0.8, -0.2, 0.4, 0.9}) {
        const cplx from_right = X(CutPoint(cplx(1e-9, y)), P1);
        const cplx plus = X(CutPoint(cplx(0.0, y), Side::Plus), P1);
        CHECK(std::abs(from_right - plus) < 1e-8);
        const cplx from_left = X(CutPoint(cplx(-1e-9, y)), P1);
        const cplx minus = X(CutPoint(cplx(0.0, y), Side::Minus), P1);
        CHECK(std::abs(from_left - minus) < 1e-8);
    }
}

TEST_CASE("X: branch points give the degenerate marker") {
    CHECK(X(CutPoint(cplx(0.0, 1.0)), P1) == cplx(0.0));
    CHECK(X(CutPoint(cplx(0.0, -1.0)), P1) == cplx(0.0));
    CHECK(at_branch_point(cplx(0.0, 1.0), P1));
    CHECK(!at_branch_point(cplx(0.1, 1.0), P1));
}

TEST_CASE("kappa: normalization at infinity and the pinned value at k=1") {
    CHECK(std::abs(kappa(CutPoint(cplx(1e9, 0.0)), P1) - 1.0) < 1e-9);
    const cplx expect = std::exp(-I * pi / 8.0);
    CHECK(std::abs(kappa(CutPoint(cplx(1.0)), P1) - expect) < 1e-15);
}

TEST_CASE("kappa: cut relation kappa_- = i kappa_+") {
    for (int i = 1; i <= 20; ++i) {
        const double y = -1.0 + 2.0 * i / 21.0;
        const cplx kp = kappa(CutPoint(cplx(0.0, y), Side::Plus), P1);
        const cplx km = kappa(CutPoint(cplx(0.0, y), Side::Minus), P1);
        CHECK(std::abs(km - I * kp) < 1e-12);
    }
}

TEST_CASE("kappa: side values continue the half-planes") {
    for (double y : {-0.7, 0.3, 0.85}) {
        const cplx plus = kappa(CutPoint(cplx(0.0, y), Side::Plus), P1);
        const cplx approx = kappa(CutPoint(cplx(1e-10, y)), P1);
        CHECK(std::abs(plus - approx) < 1e-9);
    }
}

TEST_CASE("a,b,r at k=1 for c=1") {
    const cplx a = a_coeff(CutPoint(cplx(1.0)), P1);
    const cplx b = b_coeff(CutPoint(cplx(1.0)), P1);
    const cplx r = r_coeff(CutPoint(cplx(1.0)), P1);
    CHECK(std::abs(a - std::cos(pi / 8.0)) < 1e-15);
    CHECK(std::abs(b - (-I * std::sin(pi / 8.0))) < 1e-15);
    CHECK(std::abs(r - (-I * std::tan(pi / 8.0))) < 1e-15);
    CHECK(std::norm(r) == doctest::Approx(std::tan(pi / 8) * std::tan(pi / 8)).epsilon(1e-13));
}

TEST_CASE("limits at infinity: a->1, b->0, r->0") {
    const CutPoint far(cplx(2e8, 1e8));
    CHECK(std::abs(a_coeff(far, P1) - 1.0) < 1e-8);
    CHECK(std::abs(b_coeff(far, P1)) < 1e-8);
    CHECK(std::abs(r_coeff(far, P1)) < 1e-8);
}

TEST_CASE("determinant identity a^2 - b^2 = 1 off the cut") {
    for (cplx k : sample_points()) {
        const cplx a = a_coeff(CutPoint(k), P1);
        const cplx b = b_coeff(CutPoint(k), P1);
        CHECK(std::abs(a * a - b * b - 1.0) < 1e-12);
    }
}

TEST_CASE("real axis: a real positive, |r| < 1") {
    for (double s : {0.05, 0.3, 1.0, 2.5, 17.0, -0.4, -3.0}) {
        const cplx a = a_coeff(CutPoint(cplx(s)), P1);
        CHECK(std::abs(a.imag()) < 1e-14);
        CHECK(a.real() > 0.0);
        CHECK(std::abs(r_coeff(CutPoint(cplx(s)), P1)) < 1.0);
    }
}

TEST_CASE("symmetry suite: conj(f(-conj k)) = f(k)") {
    for (cplx k : sample_points()) {
        const cplx mk = -std::conj(k);
        CHECK(std::abs(std::conj(a_coeff(CutPoint(mk), P1)) - a_coeff(CutPoint(k), P1)) <
              1e-12);
        CHECK(std::abs(std::conj(b_coeff(CutPoint(mk), P1)) - b_coeff(CutPoint(k), P1)) <
              1e-12);
        CHECK(std::abs(std::conj(r_coeff(CutPoint(mk), P1)) - r_coeff(CutPoint(k), P1)) <
              1e-12);
    }
}

TEST_CASE("f_hat: explicit value at the cut midpoint and branch-point zeros") {
    CHECK(std::abs(f_hat(CutPoint(cplx(0.0), Side::Plus), P1) - cplx(0.0, 2.0)) < 1e-14);
    CHECK(f_hat(CutPoint(cplx(0.0, 1.0)), P1) == cplx(0.0));
    CHECK(f_hat(CutPoint(cplx(0.0, -1.0)), P1) == cplx(0.0));
}

TEST_CASE("f = f_hat_+ on the cut and 1 - f a_+ b_+ = 0 on (0, ic)") {
    for (double y : {0.1, 0.35, 0.6, 0.85, 0.99}) {
        const CutPoint plus(cplx(0.0, y), Side::Plus);
        const cplx f = f_jump(plus, P1);
        CHECK(std::abs(f - f_hat(plus, P1)) < 1e-12);
        const cplx ap = a_coeff(plus, P1);
        const cplx bp = b_coeff(plus, P1);
        CHECK(std::abs(1.0 - f * ap * bp) < 1e-12);
        // and a_+ b_+ = -a_- b_-
        const CutPoint minus(cplx(0.0, y), Side::Minus);
        CHECK(std::abs(ap * bp + a_coeff(minus, P1) * b_coeff(minus, P1)) < 1e-12);
    }
}

TEST_CASE("contract violations") {
    CHECK_THROWS_AS(X(CutPoint(cplx(0.0, 0.5)), P1), std::domain_error);
    CHECK_THROWS_AS(f_jump(CutPoint(cplx(0.0, 0.5)), P1), std::domain_error);
    CHECK_THROWS_AS(X(CutPoint(cplx(2.0, 0.0), Side::Plus), P1), std::domain_error);
    CHECK_THROWS_AS(ShockParams(-1.0), std::domain_error);
    CHECK_THROWS_AS(ShockParams(0.0), std::domain_error);
}

TEST_CASE("scale covariance in c") {
    const ShockParams P2(2.5);
    CHECK(std::abs(X(CutPoint(cplx(1.0)), P2) - std::sqrt(1.0 + 2.5 * 2.5)) < 1e-14);
    CHECK(std::abs(kappa(CutPoint(cplx(1e9, 0.0)), P2) - 1.0) < 1e-8);
}
