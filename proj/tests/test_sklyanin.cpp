#include <doctest.h>

#include "ellint/sklyanin.hpp"
#include "ellint/special_fn.hpp"

using namespace ellint;

namespace {
const Moduli kM({0.03, 0.11}, {0.08, 0.7});
}

TEST_SUITE("sklyanin") {
    TEST_CASE("structure constants") {
        const cplx eta{0.0, 0.11}, tau{0.0, 0.7};
        const auto c = structure_constants(eta, tau);
        CHECK(std::abs(c.J12 - (c.J2 - c.J1) / c.J3) <= 1e-12 * std::max(1.0, std::abs(c.J12)));
        const auto flipped = structure_constants(-eta, tau);
        CHECK(std::abs(flipped.J12 - c.J12) < 1e-14);
        CHECK(std::abs(flipped.J23 - c.J23) < 1e-14);
        CHECK(std::abs(flipped.J31 - c.J31) < 1e-14);
    }

    TEST_CASE("S0 on a constant by direct substitution") {
        const cplx ell{0.23, 0.1}, z{0.17, 0.02};
        const cplx eta = kM.eta(), tau = kM.tau();
        const auto S0 = make_generator(0, ell, kM, Variant::Standard);
        auto th1 = [&](cplx x) { return jacobi_theta(1, x, tau); };
        const cplx want = th1(eta) * (th1(2.0 * z - 2.0 * eta * ell) - th1(-2.0 * z - 2.0 * eta * ell)) / th1(2.0 * z);
        const cplx got = S0.apply([](cplx) { return cplx{1.0}; }, z);
        CHECK(std::abs(got - want) / std::abs(want) < 1e-12);
    }

    TEST_CASE("modified generators are a Gaussian conjugation") {
        const cplx ell{0.31, -0.05};
        const auto fns = test_family(kM.tau());
        const cplx eta = kM.eta();
        for (int a = 0; a < 4; ++a) {
            const auto mod = make_generator(a, ell, kM, Variant::Modified);
            const auto std_ = make_generator(a, ell, kM, Variant::Standard);
            for (cplx z : sample_points(5, 0.01)) {
                const auto& f = fns[3].fn;
                auto gauss = [eta](cplx x) { return std::exp(pi * I * x * x / eta); };
                const cplx conj = gauss(z) * std_.apply([&](cplx x) { return f(x) / gauss(x); }, z);
                const cplx got = mod.apply(f, z);
                CHECK(std::abs(got - conj) <= 1e-10 * std::max(1.0, mod.magnitude(f, z)));
            }
        }
    }

    TEST_CASE("quadratic relations and Casimirs at generic spin") {
        const cplx ell{0.23, 0.1};
        std::vector<TestFunction> f{{"y+1/y", [](cplx z) { return 2.0 * std::cos(2.0 * pi * z); }}};
        const auto zs = sample_points(20, 0.01);
        CHECK(quadratic_relations_residual(ell, kM, Variant::Standard, f, zs) <= 1e-9);
        const auto fam = test_family(kM.tau());
        for (Variant v : {Variant::Standard, Variant::Modified, Variant::HalfShifted, Variant::ModularPartner}) {
            CAPTURE(to_string(v));
            CHECK(casimir_check(ell, kM, v, fam, zs) <= 1e-9);
        }
        CHECK(casimir_commutation_check(ell, kM, Variant::Standard, fam, sample_points(4, 0.01)) <= 1e-9);
    }

    TEST_CASE("spin 1/2 reduces to Pauli matrices") {
        const auto fam = test_family(kM.tau());
        const auto zs = sample_points(20, 0.01);
        CHECK(quadratic_relations_residual(0.5, kM, Variant::Standard, std::span(fam).subspan(3, 2), zs) <= 1e-10);
        const auto s0 = spin_half_matrix(make_generator(0, 0.5, kM, Variant::Standard), kM.tau());
        const cplx c = s0.matrix(0, 0);
        for (int a = 0; a < 4; ++a) {
            const auto b = spin_half_matrix(make_generator(a, 0.5, kM, Variant::Standard), kM.tau());
            CHECK(b.fit_residual < 1e-10);
            CHECK((b.matrix - c * pauli(a)).cwiseAbs().maxCoeff() < 1e-10 * std::abs(c));
        }
    }

    TEST_CASE("L-operator") {
        const SiteParams site{{0.21, 0.01}, {0.4, 0.1}};
        const auto fam = test_family(kM.tau());
        const auto zs = sample_points(8, 0.01);
        const auto L = L_operator(site, kM, Variant::Standard);
        const auto F = L_factorized(site, kM, Variant::Standard);
        const Moduli flipped(-kM.eta(), kM.tau());
        const auto Lf = L_operator({-site.u, site.ell}, flipped, Variant::Standard);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                CHECK(operator_residual(L[a][b], F[a][b], fam, zs) <= 1e-10);
                CHECK(operator_residual(Lf[a][b], -1.0 * L[a][b], fam, zs) <= 1e-10);
            }
    }

    TEST_CASE("M and N matrices") {
        const cplx tau{0.05, 0.9}, a{0.13, 0.02}, b{-0.27, 0.01};
        auto th1 = [&](cplx x) { return jacobi_theta(1, x, tau); };
        const Eigen::Matrix2cd nm = N_matrix(a, b, tau) * M_matrix(a, b, tau);
        CHECK((nm - (-2.0 * th1(a - b) * th1(a + b)) * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        const cplx a2{0.31, -0.03}, b2{0.08, 0.02};
        CHECK((N_matrix(a, b, tau) * M_matrix(a2, b2, tau) - NM_product_closed(a, b, a2, b2, tau)).cwiseAbs().maxCoeff() <
              1e-12);
        CHECK((N_matrix(a, b, tau) * pauli(3) * M_matrix(a2, b2, tau) - NsM_product_closed(a, b, a2, b2, tau))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
        CHECK((N_matrix(a, b, tau) * pauli(3) * M_matrix(a, b, tau) - NsM_product_closed(a, b, a, b, tau))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
}
