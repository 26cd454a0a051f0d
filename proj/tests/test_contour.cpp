#include <doctest.h>

#include "ellint/contour.hpp"
#include "ellint/special_fn.hpp"

using namespace ellint;

TEST_SUITE("contour") {
    TEST_CASE("trapezoid rule on Laurent monomials") {
        CHECK(std::abs(circle_quadrature([](cplx) { return cplx{1.0}; }, 16) - 1.0) < 1e-15);
        for (int k = 1; k < 32; ++k)
            CHECK(std::abs(circle_quadrature([k](cplx y) { return ipow(y, k) + ipow(y, -k); }, 64)) < 1e-14);
        // Aliasing: y^N + y^-N is not resolved by N nodes.
        CHECK(std::abs(circle_quadrature([](cplx y) { return ipow(y, 16) + ipow(y, -16); }, 16)) > 1.0);
    }

    TEST_CASE("adaptive doubling") {
        const auto r = adaptive_circle({[](cplx) { return cplx{2.5, -1.0}; }}, 1e-12);
        CHECK(r.n_used == 32);
        CHECK(std::abs(r.value - cplx{2.5, -1.0}) < 1e-15);
        const cplx a{0.3, 0.4};
        const auto smooth = adaptive_circle({[a](cplx y) { return 1.0 / (1.0 - a * y) / (1.0 - a / y); }}, 1e-12);
        CHECK(std::abs(smooth.value - 1.0 / (1.0 - a * a)) < 1e-12);
        CHECK(smooth.n_used <= 256);
        CHECK_THROWS_AS(adaptive_circle({[](cplx y) { return 1.0 / (y - 1.001); }}, 1e-12), ConvergenceError);
    }

    TEST_CASE("residue correction matches partial fractions") {
        const cplx a{1.3, 0.9}, b{0.2, -0.3};
        auto f = [=](cplx y) { return 1.0 / ((y - a) * (y - b)); };
        CHECK(std::abs(residue_corrected_integral(f, 128, {}) - circle_quadrature(f, 128)) == 0.0);
        // Residues of f(y)/y at 0, b, a.
        const cplx r0 = 1.0 / (a * b), rb = 1.0 / (b * (b - a)), ra = 1.0 / (a * (a - b));
        CHECK(std::abs(circle_quadrature(f, 128) - (r0 + rb)) < 1e-13);
        CHECK(std::abs(residue_corrected_integral(f, 128, {{a, 1, std::nullopt}}) - (r0 + rb + ra)) < 1e-10);
        // Single pole outside: the corrected contour encloses everything, total residue 0.
        auto g = [=](cplx y) { return 1.0 / (y - a); };
        CHECK(std::abs(residue_corrected_integral(g, 128, {{a, 1, 1.0 / a}})) < 1e-13);
        // A pole inside listed for correction is pushed out of the contour.
        CHECK(std::abs(residue_corrected_integral(f, 128, {{b, 1, rb}}) - r0) < 1e-13);
    }

    TEST_CASE("normalized pole list") {
        const auto poles = normalized({{2.0, 1, std::nullopt}, {0.5, 1, std::nullopt}, {2.0 + 1e-14, 1, std::nullopt}});
        REQUIRE(poles.size() == 2);
        CHECK(std::abs(poles[0].location) < std::abs(poles[1].location));
    }

    TEST_CASE("kernel pole scan") {
        const cplx p = 0.1, q = 0.2;
        const auto inside = pole_scan({0.3 * std::sqrt(q), 1.0, p, q});
        CHECK(inside.wrong_side_count == 0);
        CHECK(inside.contour_distance > 0.0);
        // Real t, y1 = 1: the pole set is closed under conjugation.
        for (const auto& pole : inside.poles) {
            bool mirrored = false;
            for (const auto& other : inside.poles) mirrored = mirrored || std::abs(other.location - std::conj(pole.location)) < 1e-12;
            CHECK(mirrored);
        }
        // t^2 q = 1 pinches the contour.
        const auto pinched = pole_scan({1.0 / std::sqrt(q), 1.0, p, q});
        CHECK(pinched.pinch_distance < 1e-12);
    }
}
