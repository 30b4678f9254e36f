#include <doctest.h>

#include <cmath>

#include "mkdv/quadrature.hpp"
#include "mkdv/specfun.hpp"
#include "test_oracles.hpp"

using namespace mkdv;

TEST_CASE("complete elliptic K: endpoints and golden values") {
    CHECK(complete_elliptic_K(0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(complete_elliptic_K(0.5) ==
          doctest::Approx(1.8540746773013719184).epsilon(1e-13));
    const double near_one = complete_elliptic_K(1.0 - 1e-8);
    CHECK(std::isfinite(near_one));
    CHECK(near_one > 10.0);
    // dK/dm ~ 5e7 here, so binary rounding of the argument dominates
    CHECK(near_one == doctest::Approx(10.59663475708766032).epsilon(1e-8));
    CHECK_THROWS_AS(complete_elliptic_K(1.0), std::domain_error);
    CHECK_THROWS_AS(complete_elliptic_K(-0.1), std::domain_error);
}

TEST_CASE("K matches the defining-integral oracle across m") {
    for (double m = 0.1; m < 0.95; m += 0.1) {
        const double agm = complete_elliptic_K(m);
        const double quad = testor::romberg(
            [m](double t) { return 1.0 / std::sqrt(1.0 - m * std::sin(t) * std::sin(t)); },
            0.0, pi / 2);
        CHECK(std::fabs(agm - quad) < 1e-11 * agm);
    }
}

TEST_CASE("jacobi dn: special values and goldens") {
    CHECK(jacobi_dn(0.0, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(jacobi_dn(0.0, 0.9) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(jacobi_dn(2.7, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    const double K = complete_elliptic_K(0.5);
    CHECK(jacobi_dn(K, 0.5) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
    CHECK(jacobi_dn(0.7, 0.3) == doctest::Approx(0.93811363968143020691).epsilon(1e-13));
    CHECK(jacobi_dn(1.3, 0.8) == doctest::Approx(0.60879330801396223833).epsilon(1e-13));
    CHECK_THROWS_AS(jacobi_dn(0.4, 1.0), std::domain_error);
}

TEST_CASE("jacobi dn: periodicity and quarter-period identity") {
    for (double m : {0.1, 0.5, 0.9, 0.99}) {
        const double K = complete_elliptic_K(m);
        for (double u : {-1.7, 0.2, 0.9, 2.4, 7.3}) {
            CHECK(std::fabs(jacobi_dn(u + 2.0 * K, m) - jacobi_dn(u, m)) < 1e-12);
            CHECK(std::fabs(jacobi_dn(u + K, m) * jacobi_dn(u, m) - std::sqrt(1.0 - m)) <
                  1e-12);
            const double v = jacobi_dn(u, m);
            CHECK(v <= 1.0 + 1e-14);
            CHECK(v >= std::sqrt(1.0 - m) - 1e-14);
        }
    }
}

TEST_CASE("theta: direct partial-sum golden at tau=-10") {
    const ThetaParams p(-10.0);
    CHECK(std::abs(theta(cplx(0.0), p) - 1.0134758981204781791) < 1e-14);
    CHECK(std::abs(theta_direct(cplx(0.0), p) - 1.0134758981204781791) < 1e-14);
}

TEST_CASE("theta: 2 pi i shift is exact invariance") {
    const ThetaParams p(-3.0);
    const cplx z(0.37, -1.2);
    CHECK(std::abs(theta(z + cplx(0.0, 2.0 * pi), p) - theta(z, p)) <
          1e-13 * std::abs(theta(z, p)));
}

TEST_CASE("theta: quasi-periodicity over the full (z,tau) grid") {
    for (double tau : {-30.0, -10.0, -2.0 * pi, -3.0, -1.0, -0.5}) {
        const ThetaParams p(tau);
        for (cplx z : {cplx(0.0), cplx(1.0), cplx(0.4, 2.0), cplx(-1.3, -3.7)}) {
            const cplx base = theta(z, p);
            for (int n = -2; n <= 2; ++n) {
                for (int l = -2; l <= 2; ++l) {
                    const cplx lhs =
                        theta(z + cplx(0.0, 2.0 * pi * n) + tau * static_cast<double>(l), p);
                    const cplx rhs =
                        base * std::exp(-0.5 * tau * l * l - z * static_cast<double>(l));
                    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
                }
            }
        }
    }
}

TEST_CASE("theta: Poisson resummation agrees with the direct series") {
    for (double tau : {-30.0, -10.0, -2.0 * pi, -3.0, -1.0, -0.5}) {
        const ThetaParams p(tau);
        for (cplx z : {cplx(0.0), cplx(1.0), cplx(0.0, 1.0), cplx(0.0, pi), cplx(1.0, pi)}) {
            const cplx d = theta_direct(z, p);
            const cplx q = theta_poisson(z, p);
            CHECK(std::abs(d - q) <= 1e-12 * std::abs(d));
        }
    }
}

TEST_CASE("theta: self-dual point tau = -2 pi") {
    const ThetaParams p(-2.0 * pi);
    // modular image of tau is 4 pi^2 / tau = -2 pi again
    const cplx z(0.2, 0.5);
    CHECK(std::abs(theta_direct(z, p) - theta_poisson(z, p)) <
          1e-12 * std::abs(theta_direct(z, p)));
}

TEST_CASE("theta: Poisson route needs far fewer terms at small |tau|") {
    const ThetaParams slow(-0.5);
    const int direct_terms = theta_direct_term_count(cplx(0.0), slow);
    const ThetaParams transformed(4.0 * pi * pi / -0.5);
    const int poisson_terms = theta_direct_term_count(cplx(0.0), transformed);
    CHECK(direct_terms > 3 * poisson_terms);
    CHECK(poisson_terms <= 9);
}

TEST_CASE("theta: real on the two model-problem lines") {
    const ThetaParams p(-2.2);
    for (double U : {0.0, 0.7, 3.9, 6.0}) {
        CHECK(std::abs(theta(cplx(0.0, U), p).imag()) < 1e-13 * std::abs(theta(cplx(0.0, U), p)));
        CHECK(std::abs(theta(cplx(0.0, pi + U), p).imag()) <
              1e-13 * std::abs(theta(cplx(0.0, pi + U), p)));
    }
}

TEST_CASE("theta_ratio handles arguments needing large reductions") {
    const ThetaParams p(-1.1);
    const double U = 5000.3;
    const cplx r1 = theta_ratio(cplx(0.0, pi + U), cplx(0.0, U), p);
    const double Ur = std::remainder(U, 2.0 * pi);
    const cplx r2 = theta(cplx(0.0, pi + Ur), p) / theta(cplx(0.0, Ur), p);
    CHECK(std::abs(r1 - r2) < 1e-12 * std::abs(r2));
}

TEST_CASE("theta: domain errors") {
    CHECK_THROWS_AS(ThetaParams(0.5), std::domain_error);
    CHECK_THROWS_AS(ThetaParams(0.0), std::domain_error);
}
