#include <doctest.h>

#include "ellint/special_fn.hpp"
#include "ellint/relations.hpp"
#include "oracles.hpp"

using namespace ellint;

TEST_SUITE("special_fn") {
    TEST_CASE("q-Pochhammer") {
        CHECK(std::abs(qpochhammer(0.0, 0.5) - 1.0) == 0.0);
        CHECK(std::abs(qpochhammer(1.0, 0.5)) == 0.0);
        const cplx x{0.3, 0.1};
        CHECK(std::abs(qpochhammer(x, 0.5) - oracle::pochhammer(x, 0.5)) < 1e-14);
        const cplx q = std::polar(0.8, 2.0);
        CHECK(std::abs(qpochhammer(x, q) - oracle::pochhammer(x, q, 400)) < 1e-13);
    }

    TEST_CASE("theta_mult") {
        CHECK(std::abs(theta_mult(1.0, 0.4)) == 0.0);
        const cplx t = std::polar(0.7, 0.3);
        CHECK(std::abs(theta_mult(t, 0.0) - (1.0 - t)) < 1e-15);
        CHECK(std::abs(theta_mult(t, 0.3) - oracle::theta(t, 0.3)) < 1e-14);
        // base outside the disc
        const cplx p = std::polar(0.35, -1.1);
        CHECK(std::abs(theta_mult(t, 1.0 / p) - 1.0 / oracle::theta(1.0 / t, p)) < 1e-13);
    }

    TEST_CASE("Jacobi theta") {
        const cplx tau{0.1, 0.8}, z{0.23, -0.07};
        CHECK(std::abs(jacobi_theta(1, 0.0, tau)) < 1e-15);
        const cplx p = e2pi(tau);
        const cplx product = I * e2pi(tau / 8.0) * std::exp(-pi * I * z) * oracle::pochhammer(p, p) *
                             oracle::theta(e2pi(z), p);
        CHECK(std::abs(jacobi_theta(1, z, tau) - product) < 1e-13);
        CHECK(std::abs(jacobi_theta(3, z + 1.0, tau) - jacobi_theta(3, z, tau)) < 1e-13);
        CHECK(std::abs(jacobi_theta(2, z, tau) - jacobi_theta(1, z + 0.5, tau)) < 1e-13);
    }

    TEST_CASE("elliptic gamma against the raw double product") {
        CHECK(std::abs(elliptic_gamma(0.5, 0.3, 0.25) - oracle::gamma(0.5, 0.3, 0.25)) < 1e-13);
        const cplx t{0.4, 0.6}, p = std::polar(0.2, 0.7), q = std::polar(0.3, -2.1);
        CHECK(std::abs(elliptic_gamma(t, p, q) - oracle::gamma(t, p, q)) < 1e-12);
    }

    TEST_CASE("elliptic gamma normalization, reflection, symmetry") {
        const cplx p = std::polar(0.31, 0.4), q = std::polar(0.22, -1.3);
        CHECK(std::abs(elliptic_gamma(std::sqrt(p * q), p, q) - 1.0) < 1e-14);
        Sampler s(11, "gamma-properties");
        for (int i = 0; i < 50; ++i) {
            const cplx t = s.polar(0.3, 1.4);
            const cplx g = elliptic_gamma(t, p, q);
            CHECK(std::abs(g * elliptic_gamma(p * q / t, p, q) - 1.0) < 1e-11);
            CHECK(std::abs(elliptic_gamma(t, q, p) - g) / std::abs(g) < 1e-12);
            CHECK(std::abs(elliptic_gamma(q * t, p, q) - theta_mult(t, p) * g) / std::abs(g) < 1e-11);
        }
    }

    TEST_CASE("elliptic gamma with a base outside the disc") {
        const cplx t{0.5, 0.2}, p = 0.3, q = std::polar(0.25, 0.9);
        CHECK(std::abs(elliptic_gamma(t, p, 1.0 / q) - 1.0 / oracle::gamma(t * q, p, q)) < 1e-12);
    }

    TEST_CASE("residue factor") {
        const cplx p = 0.3, q = 0.2;
        CHECK(std::abs(gamma_residue_factor(0, 0, p, q) - 1.0 / (oracle::pochhammer(p, p) * oracle::pochhammer(q, q))) <
              1e-14);
        // Limit taken numerically along z -> c q.
        const cplx c{0.37, 0.1};
        const double eps = 1e-6;
        const cplx z = c * q * (1.0 + eps);
        const cplx numeric = (1.0 - c * q / z) * elliptic_gamma(c / z, p, q);
        CHECK(std::abs(gamma_residue_factor(0, 1, p, q) - numeric) / std::abs(numeric) < 1e-5);
    }

    TEST_CASE("Bernoulli polynomials") {
        const QuasiPeriods w{1.0, std::polar(1.0, pi / 5), {0.4, 0.9}};
        CHECK(std::abs(bernoulli_B33(w.sum() / 2.0, w)) < 1e-14);
        const cplx w1{1.0, 0.0}, w2{0.6, 0.8};
        CHECK(std::abs(bernoulli_B22(0.0, w1, w2) - (w1 / (6.0 * w2) + w2 / (6.0 * w1) + 0.5)) < 1e-15);
    }

    TEST_CASE("modified gamma") {
        const QuasiPeriods w{1.0, std::polar(1.0, pi / 5), {0.4, 0.9}};
        const cplx u{0.3, 0.2};
        const cplx mod = modified_gamma_G(u, w, GForm::Modular);
        CHECK(std::abs(modified_gamma_G(u, w, GForm::Product) - mod) / std::abs(mod) < 1e-9);
        CHECK(std::abs(modified_gamma_G(w.sum() / 2.0, w, GForm::Product) - 1.0) < 1e-12);
        CHECK(std::abs(modified_gamma_G(u, w, GForm::Product) * modified_gamma_G(w.sum() - u, w, GForm::Product) -
                       1.0) < 1e-10);
    }

    TEST_CASE("theta identities") {
        const cplx w1 = 1.0, w2{0.6, 0.8};
        CHECK(theta_modular_check({0.2, 0.1}, w1, w2) <= 1e-10);
        CHECK(theta_modular_check((w1 + w2) / 2.0, w1, w2) <= 1e-10);
        CHECK(theta_duplication_check({0.17, 0.05}, {0.05, 0.9}) <= 1e-10);
        for (ThetaAddition id : kThetaAdditions) CHECK(theta_addition_check(id, {0.1, 0.05}, {-0.3, 0.02}, {0.1, 1.1}) <= 1e-10);
    }
}
