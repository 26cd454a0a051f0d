// Structural checks of the integral operators on grids.
#include "ellint/operators.hpp"
#include "ellint/special_fn.hpp"
#include "suite_support.hpp"

namespace ellint {

namespace {

using support::Worst;

KernelVariant native_variant(Regime r) { return r == Regime::QGreater1 ? KernelVariant::QGreater1 : KernelVariant::QLess1; }

std::vector<KernelVariant> variants(Regime r) {
    if (r == Regime::QGreater1) return {KernelVariant::QGreater1};
    return {KernelVariant::QLess1, KernelVariant::HalfShifted};
}

// Additive S1 argument whose multiplicative parameter has modulus in [lo, hi].
cplx draw_s1_argument(Sampler& s, const KernelSet& k, double lo, double hi) {
    const cplx t = s.polar(lo, hi);
    return k.variant() == KernelVariant::QGreater1 ? log2pi(t) : -log2pi(t);
}

const Fn1 kProbe = [](cplx y) { return y + 1.0 / y + 0.3 * (y * y + 1.0 / (y * y)) + 0.1; };
const Fn2 kProbe2 = [](cplx a, cplx b) {
    return (a + 1.0 / a) * (b + 1.0 / b) + 0.2 * (a * a + 1.0 / (a * a)) + 0.1 * (b * b * b + 1.0 / (b * b * b));
};

SuiteOutcome s2_inverse(const RunContext& ctx, int) {
    Sampler s(ctx.seed, "S2_inverse");
    Worst w;
    for (int i = 0; i < 50; ++i) {
        const Moduli m = support::draw_moduli(s, ctx, 0.05, 0.5);
        for (KernelVariant v : variants(ctx.regime)) {
            const KernelSet k(m, v);
            const cplx a{s.uniform(-0.5, 0.5), s.uniform(-0.05, 0.05)};
            const cplx y1 = s.phase(), y2 = s.phase();
            const double r = std::max(std::abs(k.s2_weight(0.0, y1, y2) - 1.0),
                                      std::abs(k.s2_weight(a, y1, y2) * k.s2_weight(-a, y1, y2) - 1.0));
            w.offer(r, [&](DrawLog& l) {
                l.add("variant", to_string(v));
                l.add("p", k.p());
                l.add("q", k.q());
                l.add("a", a);
            });
        }
    }
    return w.finish();
}

// t = +1 and t = -1: exact identity and parity, both for S1 on the grid and the terminating sum.
SuiteOutcome limits(const RunContext& ctx, int n) {
    Sampler s(ctx.seed, "B_limits");
    const Moduli m = support::draw_moduli(s, ctx, 0.05, 0.5);
    const KernelSet k(m, native_variant(ctx.regime));
    const auto g = TorusGrid::sample(n, kProbe);
    const Eigen::Map<const Eigen::VectorXcd> f(g.values.data(), n);
    const auto nodes = circle_nodes(n);
    const Eigen::VectorXcd id = s1_matrix(k, 0.0, n) * f, par = s1_matrix(k, 0.5, n) * f;
    double r = 0;
    for (int j = 0; j < n; ++j) {
        r = std::max({r, std::abs(id(j) - kProbe(nodes[j])), std::abs(par(j) - kProbe(-nodes[j])),
                      std::abs(B_discrete(m, -0.5, -0.5, 1, kProbe, nodes[j]) - kProbe(nodes[j])),
                      std::abs(B_discrete(m, -0.5, -0.5, -1, kProbe, nodes[j]) - kProbe(-nodes[j]))});
    }
    DrawLog l;
    l.add("p", m.p());
    l.add("q", m.q());
    return {r, n, std::move(l)};
}

SuiteOutcome m_vs_s1(const RunContext& ctx, int n) {
    Sampler s(ctx.seed, "M_vs_S1");
    Worst w;
    const auto nodes = circle_nodes(n);
    const auto g = TorusGrid::sample(n, kProbe);
    for (int i = 0; i < 3; ++i) {
        const Moduli m = support::draw_moduli(s, ctx, 0.05, 0.5);
        for (KernelVariant v : variants(ctx.regime)) {
            const KernelSet k(m, v);
            const cplx a = draw_s1_argument(s, k, 0.1, 0.8);
            const Eigen::VectorXcd out = s1_matrix(k, a, n) * Eigen::Map<const Eigen::VectorXcd>(g.values.data(), n);
            double diff = 0, scale = 1;
            for (int j = 0; j < n; ++j) {
                const cplx ref = bailey_M(k, k.s1_parameter(a), kProbe, nodes[j], n);
                diff = std::max(diff, std::abs(out(j) - ref));
                scale = std::max(scale, std::abs(ref));
            }
            w.offer(diff / scale, [&](DrawLog& l) {
                l.add("variant", to_string(v));
                l.add("p", k.p());
                l.add("q", k.q());
                l.add("a", a);
            });
        }
    }
    return w.finish(n);
}

// S1 maps symmetric functions to symmetric functions and converges spectrally in N.
SuiteOutcome s1_symmetry(const RunContext& ctx, int n) {
    Sampler s(ctx.seed, "S1_symmetry");
    Worst w;
    for (int i = 0; i < 5; ++i) {
        const Moduli m = support::draw_moduli(s, ctx, 0.05, 0.5);
        const KernelSet k(m, native_variant(ctx.regime));
        const cplx a = draw_s1_argument(s, k, 0.1, 0.8);
        auto g = TorusGrid::sample(n, kProbe);
        apply_along(g, 0, s1_matrix(k, a, n));
        const auto fine = TorusGrid::sample(2 * n, kProbe);
        const auto coarse = TorusGrid::sample(n, kProbe);
        const cplx y = s.phase();
        const cplx at_n = s1_at(k, a, coarse.values, y), at_2n = s1_at(k, a, fine.values, y);
        const double r = std::max(g.symmetry_defect(0), support::rel(at_n, at_2n));
        w.offer(r, [&](DrawLog& l) {
            l.add("p", k.p());
            l.add("q", k.q());
            l.add("a", a);
        });
    }
    return w.finish(n);
}

RParams draw_rparams(Sampler& s) {
    const double c = s.uniform(0.05, 0.12);
    return {{s.uniform(-0.3, 0.3), 0.0}, {s.uniform(-0.3, 0.3), 0.0}, {s.uniform(-0.3, 0.3), c},
            {s.uniform(-0.3, 0.3), c}};
}

// Grid application and the pointwise action agree; R(u|u) is the identity.
SuiteOutcome r_structure(const RunContext& ctx, int n) {
    Sampler s(ctx.seed, "R_structure");
    Worst w;
    const auto nodes = circle_nodes(n);
    for (int i = 0; i < 3; ++i) {
        const Moduli m = support::draw_moduli(s, ctx, 0.05, 0.2);
        const KernelSet k(m, native_variant(ctx.regime));
        RParams r = draw_rparams(s);
        if (ctx.regime == Regime::QGreater1) r = {r.u1, r.u2, std::conj(r.v1), std::conj(r.v2)};
        const ROperator R(k, r, n);
        auto g = TorusGrid::sample(n, kProbe2);
        R.apply_grid(g);
        const auto act = R.prepare(kProbe2);
        double diff = 0, scale = 1;
        for (int a = 0; a < n; a += 3)
            for (int b = 0; b < n; b += 5) {
                const cplx ref = act(nodes[a], nodes[b]);
                diff = std::max(diff, std::abs(g.values[a * n + b] - ref));
                scale = std::max(scale, std::abs(ref));
            }
        auto id = TorusGrid::sample(n, kProbe2);
        const auto orig = id;
        ROperator(k, {r.u1, r.u2, r.u1, r.u2}, n).apply_grid(id);
        double iddiff = 0;
        for (std::size_t j = 0; j < id.size(); ++j) iddiff = std::max(iddiff, std::abs(id.values[j] - orig.values[j]));
        w.offer(std::max(diff / scale, iddiff), [&](DrawLog& l) {
            l.add("p", k.p());
            l.add("q", k.q());
            l.add("u1", r.u1);
            l.add("u2", r.u2);
            l.add("v1", r.v1);
            l.add("v2", r.v2);
        });
    }
    return w.finish(n);
}

SuiteOutcome zero_modes(const RunContext& ctx, int) {
    Sampler s(ctx.seed, "zero_modes");
    const Moduli m = support::draw_moduli(s, ctx, 0.05, 0.3);
    double worst = 0;
    std::string where;
    const std::pair<double, double> spins[] = {{0.5, -0.5}, {0.5, 0.0}, {1.0, 0.0}, {0.5, 0.5}, {-0.5, 0.5}};
    for (auto [lq, lp] : spins) {
        // Basis sizes: 2l+1 per base; the order -2 partner of a reciprocal ansatz has two elements.
        const int ni = lq < 0 ? 2 : static_cast<int>(2 * lq + 1);
        const int nj = lp < 0 ? 2 : static_cast<int>(2 * lp + 1);
        for (int i = 0; i < ni; ++i)
            for (int j = 0; j < nj; ++j) {
                const double r = zero_mode_check(m, lq, lp, i, j).value();
                if (!(r <= worst)) {
                    worst = r;
                    where = "(" + std::to_string(lq) + "," + std::to_string(lp) + ")[" + std::to_string(i) + "," +
                            std::to_string(j) + "]";
                }
            }
    }
    if (zero_mode_check(m, -0.5, -0.5, 0, 0)) throw DomainError("spins (-1/2,-1/2) must have no zero modes");
    DrawLog l;
    l.add("p", m.p());
    l.add("q", m.q());
    l.add("worst", where);
    return {worst, 0, std::move(l)};
}

SuiteOutcome meromorphic(const RunContext& ctx, int n) {
    Worst w;
    for (int i = 0; i < 3; ++i) {
        struct Draw {
            Moduli m;
            cplx t, t1, t2;
        };
        const auto [d, attempts] = draw_until<Draw>(ctx.seed, "meromorphic_zero_mode/" + std::to_string(i), 100,
                                                    [&](Sampler& s) -> std::optional<Draw> {
            const Moduli m = support::draw_moduli(s, ctx, 0.05, 0.3);
            const KernelSet k(m, native_variant(ctx.regime));
            const cplx t = k.s1_parameter(draw_s1_argument(s, k, 0.5, 0.85));
            const cplx t1 = std::polar(0.9, s.uniform(-pi, pi)), t2 = 1.0 / (t * t * t1);
            // The poles of f at t_k p^j q^k must stay off the contour.
            for (cplx c : {t1, t2})
                for (int a = 0; a < 6; ++a)
                    for (int b = 0; b < 6; ++b)
                        if (std::abs(std::abs(c * ipow(k.p(), a) * ipow(k.q(), b)) - 1.0) < 0.1 - 1e-12)
                            return std::nullopt;
            return Draw{m, t, t1, t2};
        });
        const KernelSet k(d.m, native_variant(ctx.regime));
        double diff = 0, scale = 1;
        for (cplx x : {std::polar(1.0, 0.93), std::polar(1.0, 0.36), std::polar(1.0, 2.2)}) {
            diff = std::max(diff, std::abs(s1_on_gamma_pair(k, d.t, d.t1, d.t2, x, n)));
            scale = std::max(scale, std::abs(k.gamma(d.t1 * x) * k.gamma(d.t1 / x) * k.gamma(d.t2 * x) *
                                             k.gamma(d.t2 / x)));
        }
        w.offer(diff / scale, [&](DrawLog& l) {
            l.add("p", k.p());
            l.add("q", k.q());
            l.add("t", d.t);
            l.add("t1", d.t1);
            l.add("t2", d.t2);
            l.add("rejected", std::to_string(attempts));
        });
    }
    return w.finish(n);
}

}  // namespace

std::vector<Suite> operator_suites() {
    using M = Module;
    return {
        {"S2_inverse", M::Operators, "multiplier inverse and unit", 1e-12, 0, false, true, true, s2_inverse},
        {"B_limits", M::Operators, "identity and parity limits", 1e-12, 64, false, true, true, limits},
        {"M_vs_S1", M::Operators, "Fourier transform equals S1", 1e-12, 64, false, true, true, m_vs_s1},
        {"S1_symmetry", M::Operators, "S1 symmetry and convergence", 1e-10, 128, false, true, true, s1_symmetry},
        {"R_structure", M::Operators, "R grid and pointwise forms, R(u|u)", 1e-10, 32, false, true, true,
         r_structure},
        {"zero_modes", M::Operators, "finite-dimensional zero modes", 1e-8, 0, false, true, true, zero_modes},
        {"meromorphic_zero_mode", M::Operators, "meromorphic zero mode", 1e-7, 256, false, true, true, meromorphic},
    };
}

}  // namespace ellint
