#include <doctest.h>

#include <cmath>

#include "mkdv/quadrature.hpp"
#include "test_oracles.hpp"

using namespace mkdv;

TEST_CASE("constant integrand") {
    CHECK(integrate([](double) { return 1.0; }, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("smooth integrand matches Romberg oracle") {
    auto f = [](double x) { return std::exp(-x * x) * std::cos(3.0 * x); };
    const double gk = integrate(f, -2.0, 3.0);
    const double rb = testor::romberg(f, -2.0, 3.0);
    CHECK(gk == doctest::Approx(rb).epsilon(1e-12));
}

TEST_CASE("right endpoint inverse-sqrt singularity: arcsin antiderivative") {
    QuadratureSpec qs;
    qs.singular_right = true;
    const double v = integrate([](double x) { return 1.0 / std::sqrt(1.0 - x * x); },
                               0.0, 1.0, qs);
    CHECK(v == doctest::Approx(pi / 2).epsilon(1e-12));
}

TEST_CASE("both endpoints singular: Beta(1/2,1/2) = pi") {
    QuadratureSpec qs;
    qs.singular_left = qs.singular_right = true;
    const double v = integrate(
        [](double x) { return 1.0 / (std::sqrt(x) * std::sqrt(1.0 - x)); }, 0.0, 1.0, qs);
    CHECK(v == doctest::Approx(pi).epsilon(1e-12));
}

TEST_CASE("reversed bounds flip the sign") {
    auto f = [](double x) { return x * x; };
    CHECK(integrate(f, 1.0, 0.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("depth exhaustion raises ConvergenceError with best estimate") {
    QuadratureSpec qs;
    qs.max_depth = 6;
    qs.abs_tol = qs.rel_tol = 1e-15;
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, qs),
                    ConvergenceError);
    try {
        integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, qs);
    } catch (const ConvergenceError& e) {
        CHECK(e.best_estimate > 0.0);
        CHECK(e.error_bound > 0.0);
    }
}

TEST_CASE("complex integrand") {
    const cplx v = integrate_cplx(
        [](double t) { return std::exp(cplx(0.0, t)); }, 0.0, pi / 2);
    CHECK(std::abs(v - cplx(1.0, 1.0)) < 1e-13);
}

TEST_CASE("path integral along a segment") {
    // int of z^2 from 0 to 1+i is (1+i)^3/3
    const cplx z1(1.0, 1.0);
    const cplx v = path_integral([](cplx z) { return z * z; }, cplx(0.0), z1);
    CHECK(std::abs(v - z1 * z1 * z1 / 3.0) < 1e-13);
}

TEST_CASE("path integral with branch-point endpoint") {
    // int of 1/sqrt(z) from 0 to 4 along the real axis = 2 sqrt(4) = 4
    const cplx v = path_integral([](cplx z) { return 1.0 / std::sqrt(z); }, cplx(0.0),
                                 cplx(4.0), {}, true);
    CHECK(std::abs(v - 4.0) < 1e-12);
}
