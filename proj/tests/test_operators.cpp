#include <doctest.h>

#include "ellint/operators.hpp"
#include "ellint/special_fn.hpp"
#include "oracles.hpp"

using namespace ellint;

namespace {
const Moduli kM = Moduli::from_bases(std::polar(0.12, 0.5), std::polar(0.15, -0.8));
const KernelSet kK(kM, KernelVariant::QLess1);

cplx smooth(cplx y) { return 1.0 + 0.3 * (y + 1.0 / y) + 0.1 * (y * y + 1.0 / (y * y)); }
}  // namespace

TEST_SUITE("operators") {
    TEST_CASE("S2 multiplier") {
        const cplx a{0.07, 0.02}, y1 = std::polar(1.0, 0.4), y2 = std::polar(1.0, -1.9);
        CHECK(std::abs(kK.s2_weight(0.0, y1, y2) * kK.s2_weight(0.0, y1, y2) - 1.0) < 1e-13);
        CHECK(std::abs(kK.s2_weight(a, y1, y2) * kK.s2_weight(-a, y1, y2) - 1.0) < 1e-12);
        CHECK(std::abs(kK.s2_weight(a, y1, y2) - kK.s2_weight(a, y2, y1)) < 1e-13);
        // Four gamma factors by the raw product.
        const cplx r = kK.s2_parameter(a);
        cplx raw = 1.0;
        for (cplx e1 : {y1, 1.0 / y1})
            for (cplx e2 : {y2, 1.0 / y2}) raw *= oracle::gamma(r * e1 * e2, kK.p(), kK.q());
        CHECK(std::abs(kK.s2_weight(a, y1, y2) - raw) / std::abs(raw) < 1e-11);
    }

    TEST_CASE("S2(0) is the identity multiplier") {
        const auto w = s2_matrix(kK, 0.0, 16);
        CHECK((w.array() - 1.0).abs().maxCoeff() < 1e-12);
    }

    TEST_CASE("D(1/t) D(t) = 1") {
        const cplx s{0.4, 0.3}, y = std::polar(1.0, 0.7), w = std::polar(1.0, 2.2);
        CHECK(std::abs(bailey_D(kK, s, y, w) * bailey_D(kK, 1.0 / s, y, w) - 1.0) < 1e-12);
    }

    TEST_CASE("S1 limits and the Fourier-transform form") {
        const int n = 32;
        CHECK((s1_matrix(kK, 0.0, n) - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0);
        const auto parity = s1_matrix(kK, 0.5, n);
        const auto ys = circle_nodes(n);
        Eigen::VectorXcd f(n);
        for (int j = 0; j < n; ++j) f(j) = smooth(ys[j]) + 0.2 * ys[j];
        const Eigen::VectorXcd pf = parity * f;
        for (int j = 0; j < n; ++j) CHECK(std::abs(pf(j) - (smooth(-ys[j]) - 0.2 * ys[j])) < 1e-14);
        const cplx a{0.06, 0.03};
        CHECK((s1_matrix_t(kK, kK.s1_parameter(a), n) - s1_matrix(kK, a, n)).cwiseAbs().maxCoeff() < 1e-13);
        CHECK_THROWS_AS(kK.s1_norm(1.0 / std::sqrt(kK.q()) * (1.0 + 1e-8)), ExceptionalParameter);
    }

    TEST_CASE("S1 at small argument approaches the identity") {
        // t = e^{-2 pi i a} inside the disc needs Im(a) < 0.
        const int n = 256;
        const auto ys = circle_nodes(n);
        Eigen::VectorXcd f(n);
        for (int j = 0; j < n; ++j) f(j) = smooth(ys[j]);
        double prev = 1.0;
        for (double a : {0.04, 0.02, 0.01}) {
            const Eigen::VectorXcd g = s1_matrix(kK, cplx{0.0, -a}, n) * f;
            const double dev = (g - f).cwiseAbs().maxCoeff();
            CHECK(dev < prev);
            prev = dev;
        }
        CHECK(prev < 0.1);
    }

    TEST_CASE("elliptic beta integral at the symmetric point") {
        // kappa * integral of prod_k Gamma(t y^{+-1}) / Gamma(y^{+-2}) = prod_{j<k} Gamma(t_j t_k), all t_k = (pq)^{1/6}.
        const cplx p = kK.p(), q = kK.q();
        const cplx t = std::pow(p * q, 1.0 / 6.0);
        auto integrand = [&](cplx y) {
            cplx v = 1.0;
            for (int k = 0; k < 6; ++k) v *= elliptic_gamma(t * y, p, q) * elliptic_gamma(t / y, p, q);
            return v / (elliptic_gamma(y * y, p, q) * elliptic_gamma(1.0 / (y * y), p, q));
        };
        const cplx kappa = oracle::pochhammer(p, p) * oracle::pochhammer(q, q) / 2.0;
        const cplx lhs = kappa * circle_quadrature(integrand, 128);
        const cplx rhs = std::pow(elliptic_gamma(t * t, p, q), 15);
        CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-8);
        CHECK(std::abs(std::pow(elliptic_gamma(t * t, q, p), 15) - rhs) / std::abs(rhs) < 1e-12);
    }

    TEST_CASE("terminating residue sum") {
        const cplx w = std::polar(1.0, 0.8);
        CHECK(std::abs(B_discrete(kM, -0.5, -0.5, +1, smooth, w) - smooth(w)) < 1e-12);
        auto g = [](cplx y) { return smooth(y) + 0.7 * (y * y * y + 1.0 / (y * y * y)); };
        CHECK(std::abs(B_discrete(kM, -0.5, -0.5, -1, g, w) - g(-w)) < 1e-12);
    }

    TEST_CASE("terminating sum is the limit of the continued transform") {
        // S1 continued past |t| = 1: circle integral plus twice the residues of the in-poles t w^{+-1} p^j q^k
        // that left the unit disc (the mirrored out-poles inside contribute the same). The t -> 1/q limit is
        // approached from both sides and averaged, cancelling the O(eps) term.
        const cplx p = kM.p(), q = kM.q();
        auto G = [&](cplx x) { return elliptic_gamma(x, p, q); };
        auto inv_gamma_sq = [&](cplx y) { return theta_mult(y * y, p) * theta_mult(1.0 / (y * y), q); };
        auto continued = [&](cplx t, const Fn1& f, cplx w) {
            auto integrand = [&](cplx y) {
                return G(t * w * y) * G(t * w / y) * G(t * y / w) * G(t / (w * y)) * inv_gamma_sq(y) * f(y);
            };
            cplx corr = 0;
            for (int j = 0; j < 12; ++j)
                for (int k = 0; k < 12; ++k)
                    for (int side : {1, -1}) {
                        const cplx c = side > 0 ? t * w : t / w;
                        const cplx y0 = c * ipow(p, j) * ipow(q, k);
                        if (std::abs(y0) <= 1.0) continue;
                        const cplx others = side > 0 ? G(t * w * y0) * G(t * y0 / w) * G(t / (w * y0))
                                                     : G(t * w * y0) * G(t * w / y0) * G(t * y0 / w);
                        corr += gamma_residue_factor(j, k, p, q) * others * inv_gamma_sq(y0) * f(y0);
                    }
            const cplx kappa = oracle::pochhammer(p, p) * oracle::pochhammer(q, q) / 2.0;
            return kappa / G(t * t) * (circle_quadrature(integrand, 256) + 2.0 * corr);
        };
        const cplx w = std::pow(std::abs(q), -1.5) * std::polar(1.0, 0.7);
        const double eps = 1e-4;
        const Fn1 fs[] = {[](cplx y) { return y * y + 1.0 / (y * y); },
                          [&](cplx y) { return jacobi_theta(4, log2pi(y), kM.tau() / 2.0); }};
        for (const Fn1& f : fs) {
            const cplx limit = 0.5 * (continued((1.0 + eps) / q, f, w) + continued((1.0 - eps) / q, f, w));
            const cplx sum = B_discrete(kM, 0.5, -0.5, +1, f, w);
            CHECK(std::abs(sum - limit) / std::max(1.0, std::abs(sum)) < 1e-6);
        }
    }

    TEST_CASE("zero modes") {
        CHECK_FALSE(zero_mode_check(kM, -0.5, -0.5, 0, 0).has_value());
        for (auto [lq, lp] : {std::pair{0.5, -0.5}, {0.5, 0.0}, {1.0, 0.0}, {0.5, 0.5}}) {
            const auto r = zero_mode_check(kM, lq, lp, 0, 0);
            REQUIRE(r.has_value());
            CHECK(*r <= 1e-8);
        }
        // p <-> q mirror.
        const Moduli mirrored = Moduli::from_bases(kM.q(), kM.p());
        const auto a = zero_mode_check(kM, 0.5, 0.0, 0, 0), b = zero_mode_check(mirrored, 0.0, 0.5, 0, 0);
        REQUIRE(b.has_value());
        CHECK(*b <= 1e-8);
        CHECK(*a <= 1e-8);
    }

    TEST_CASE("theta+ bases") {
        CHECK(theta_plus_basis(0.5, ThetaBase::Q, kM).size() == 2);
        CHECK(theta_plus_basis(1.0, ThetaBase::P, kM).size() == 3);
        CHECK_THROWS_AS(theta_plus_basis(0.3, ThetaBase::Q, kM), DomainError);
    }

    TEST_CASE("R depends on differences of spectral parameters") {
        const int n = 16;
        const RParams r{{0.03, 0.01}, {-0.02, 0.015}, {0.01, -0.01}, {0.04, 0.0}};
        const cplx c{0.013, 0.004};
        const RParams shifted{r.u1 + c, r.u2 + c, r.v1 + c, r.v2 + c};
        auto sample = [] { return TorusGrid::sample(16, Fn2([](cplx x, cplx y) { return smooth(x) * (y + 1.0 / y); })); };
        TorusGrid a = sample(), b = sample();
        ROperator(kK, r, n).apply_grid(a);
        ROperator(kK, shifted, n).apply_grid(b);
        double dev = 0, scale = 1;
        for (std::size_t i = 0; i < a.size(); ++i) {
            dev = std::max(dev, std::abs(a.values[i] - b.values[i]));
            scale = std::max(scale, std::abs(a.values[i]));
        }
        CHECK(dev / scale < 1e-10);
    }
}
