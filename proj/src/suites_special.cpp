// Sweeps over the special-function and contour identities.
#include "ellint/contour.hpp"
#include "ellint/special_fn.hpp"
#include "suite_support.hpp"

namespace ellint {

namespace {

using support::Worst;

constexpr int kSweep = 200;

cplx draw_tau(Sampler& s, const RunContext& ctx) { return log2pi(s.polar(ctx.modulus_min, ctx.modulus_max)); }

SuiteOutcome theta_addition(const RunContext& ctx, int) {
    Sampler s(ctx.seed, "theta_addition");
    Worst w;
    for (int i = 0; i < kSweep; ++i) {
        const cplx tau = draw_tau(s, ctx);
        const double h = 0.25 * tau.imag();
        const cplx x{s.uniform(-0.5, 0.5), s.uniform(-h, h)}, y{s.uniform(-0.5, 0.5), s.uniform(-h, h)};
        for (ThetaAddition id : kThetaAdditions)
            w.offer(theta_addition_check(id, x, y, tau), [&](DrawLog& l) {
                l.add("identity", to_string(id));
                l.add("tau", tau);
                l.add("x", x);
                l.add("y", y);
            });
    }
    return w.finish();
}

SuiteOutcome theta_duplication(const RunContext& ctx, int) {
    Sampler s(ctx.seed, "theta_duplication");
    Worst w;
    for (int i = 0; i < kSweep; ++i) {
        const cplx tau = draw_tau(s, ctx);
        const cplx x{s.uniform(-0.5, 0.5), s.uniform(-0.25, 0.25) * tau.imag()};
        w.offer(theta_duplication_check(x, tau), [&](DrawLog& l) {
            l.add("tau", tau);
            l.add("x", x);
        });
    }
    return w.finish();
}

SuiteOutcome theta_modular(const RunContext& ctx, int) {
    Sampler s(ctx.seed, "theta_modular");
    Worst w;
    for (int i = 0; i < kSweep; ++i) {
        const cplx w1 = std::polar(s.uniform(0.8, 1.2), s.uniform(-0.3, 0.3));
        const double side = s.uniform(0, 1) < 0.5 ? -1.0 : 1.0;
        const cplx ratio{s.uniform(-0.5, 0.5), side * s.uniform(0.4, 1.2)};
        const cplx w2 = w1 * ratio;
        const cplx u = s.uniform(-0.5, 0.5) * w1 + s.uniform(-0.5, 0.5) * w2;
        w.offer(theta_modular_check(u, w1, w2), [&](DrawLog& l) {
            l.add("u", u);
            l.add("w1", w1);
            l.add("w2", w2);
        });
    }
    return w.finish();
}

struct GammaDraw {
    cplx p, q, t;
};

// |p|, |q| from the context (|q| > 1 in the inverted regime), t kept 1e-3 away from poles and zeros.
GammaDraw draw_gamma(Sampler& s, const RunContext& ctx) {
    for (;;) {
        const Moduli m = s.moduli(ctx.modulus_min, ctx.modulus_max, ctx.modulus_min, ctx.modulus_max, ctx.regime);
        const cplx t = s.polar(0.2, 1.5);
        if (support::lattice_distance(t, m.p(), m.q_inside()) > 1e-3) return {m.p(), m.q(), t};
    }
}

SuiteOutcome gamma_reflection(const RunContext& ctx, int) {
    Sampler s(ctx.seed, "gamma_reflection");
    Worst w;
    for (int i = 0; i < kSweep; ++i) {
        const auto [p, q, t] = draw_gamma(s, ctx);
        const cplx g = elliptic_gamma(t, p, q);
        const double r = std::max({std::abs(g * elliptic_gamma(p * q / t, p, q) - 1.0),
                                   support::rel(elliptic_gamma(t, q, p), g),
                                   std::abs(elliptic_gamma(std::sqrt(p * q), p, q) - 1.0)});
        w.offer(r, [&](DrawLog& l) {
            l.add("p", p);
            l.add("q", q);
            l.add("t", t);
        });
    }
    return w.finish();
}

SuiteOutcome gamma_shifts(const RunContext& ctx, int) {
    Sampler s(ctx.seed, "gamma_shifts");
    Worst w;
    for (int i = 0; i < kSweep; ++i) {
        const auto [p, q, t] = draw_gamma(s, ctx);
        const cplx g = elliptic_gamma(t, p, q);
        auto rel = [](cplx a, cplx b) { return std::abs(a - b) / std::abs(b); };
        const double r = std::max(rel(elliptic_gamma(q * t, p, q), theta_mult(t, p) * g),
                                  rel(elliptic_gamma(p * t, p, q), theta_mult(t, q) * g));
        w.offer(r, [&](DrawLog& l) {
            l.add("p", p);
            l.add("q", q);
            l.add("t", t);
        });
    }
    return w.finish();
}

// Quasi-periods near (1, e^{i pi/5}, 0.4+0.9i), all six bases at least 0.05 from the unit circle.
QuasiPeriods draw_periods(Sampler& s) {
    const QuasiPeriods base{1.0, std::polar(1.0, pi / 5), {0.4, 0.9}};
    for (;;) {
        QuasiPeriods w{base.w1 * (1.0 + s.polar(0, 0.1)), base.w2 * (1.0 + s.polar(0, 0.1)),
                       base.w3 * (1.0 + s.polar(0, 0.1))};
        bool ok = true;
        for (cplx b : {w.q(), w.p(), w.r(), w.q_mod(), w.p_mod(), w.r_mod()})
            ok = ok && std::abs(std::abs(b) - 1.0) > 0.05;
        if (!ok) continue;
        try {
            w.check_incommensurate();
        } catch (const DomainError&) {
            continue;
        }
        return w;
    }
}

template <class Residual>
SuiteOutcome g_sweep(const RunContext& ctx, const char* stream, Residual residual) {
    Sampler s(ctx.seed, stream);
    Worst w;
    int rejected = 0;
    for (int i = 0; i < kSweep;) {
        const QuasiPeriods om = draw_periods(s);
        const cplx u = om.sum() / 2.0 + s.polar(0, 0.5);
        double r;
        try {
            r = residual(om, u);
        } catch (const PoleProximity&) {
            if (++rejected > 100 * kSweep) throw SamplerExhausted(std::string(stream) + ": too many pole rejections");
            continue;
        }
        ++i;
        w.offer(r, [&](DrawLog& l) {
            l.add("w1", om.w1);
            l.add("w2", om.w2);
            l.add("w3", om.w3);
            l.add("u", u);
        });
    }
    w.log.add("rejected", std::to_string(rejected));
    return w.finish();
}

SuiteOutcome g_normalization(const RunContext& ctx, int) {
    return g_sweep(ctx, "G_normalization", [](const QuasiPeriods& w, cplx) {
        return std::max(std::abs(modified_gamma_G(w.sum() / 2.0, w, GForm::Product) - 1.0),
                        std::abs(modified_gamma_G(w.sum() / 2.0, w, GForm::Modular) - 1.0));
    });
}

SuiteOutcome g_reflection(const RunContext& ctx, int) {
    return g_sweep(ctx, "G_reflection", [](const QuasiPeriods& w, cplx u) {
        return std::abs(modified_gamma_G(u, w, GForm::Product) * modified_gamma_G(w.sum() - u, w, GForm::Product) -
                        1.0);
    });
}

SuiteOutcome g_forms(const RunContext& ctx, int) {
    return g_sweep(ctx, "G_forms", [](const QuasiPeriods& w, cplx u) {
        const cplx mod = modified_gamma_G(u, w, GForm::Modular);
        return std::abs(modified_gamma_G(u, w, GForm::Product) - mod) / std::abs(mod);
    });
}

// Trapezoid rule on symmetric Laurent polynomials of degree < N/2 returns the constant term.
SuiteOutcome quadrature_exact(const RunContext& ctx, int n) {
    Sampler s(ctx.seed, "quadrature_exact");
    Worst w;
    for (int i = 0; i < kSweep; ++i) {
        const int degree = static_cast<int>(s.uniform(1, n / 2.0));
        std::vector<cplx> c(degree + 1);
        for (cplx& ck : c) ck = s.polar(0, 1);
        auto f = [&](cplx y) {
            cplx v = c[0];
            for (int k = 1; k <= degree; ++k) v += c[k] * (ipow(y, k) + ipow(y, -k));
            return v;
        };
        w.offer(std::abs(circle_quadrature(f, n) - c[0]), [&](DrawLog& l) { l.add("degree", std::to_string(degree)); });
    }
    return w.finish(n);
}

// f(y) = 1 / ((y - a)(y - b)) with |a| < 1 < |b|; the deformed contour also encloses b.
SuiteOutcome residue_correction(const RunContext& ctx, int n) {
    Sampler s(ctx.seed, "residue_correction");
    Worst w;
    for (int i = 0; i < kSweep; ++i) {
        const cplx a = s.polar(0.2, 0.7), b = s.polar(1.4, 3.0);
        auto f = [=](cplx y) { return 1.0 / ((y - a) * (y - b)); };
        const cplx at0 = 1.0 / (a * b), at_a = 1.0 / (a * (a - b)), at_b = 1.0 / (b * (b - a));
        const double plain = std::abs(circle_quadrature(f, n) - (at0 + at_a));
        const double given = std::abs(residue_corrected_integral(f, n, {{b, 1, at_b}}) - (at0 + at_a + at_b));
        const double found = std::abs(residue_corrected_integral(f, n, {{b, 1, std::nullopt}}) - (at0 + at_a + at_b));
        const double scale = std::max(1.0, std::abs(at0 + at_a + at_b));
        w.offer(std::max({plain, given, found}) / scale, [&](DrawLog& l) {
            l.add("a", a);
            l.add("b", b);
        });
    }
    return w.finish(n);
}

}  // namespace

std::vector<Suite> special_fn_suites() {
    using M = Module;
    return {
        {"theta_addition", M::SpecialFn, "theta product identities", 1e-10, 0, false, true, true, theta_addition},
        {"theta_duplication", M::SpecialFn, "theta duplication", 1e-10, 0, false, true, true, theta_duplication},
        {"theta_modular", M::SpecialFn, "theta modular law", 1e-10, 0, false, true, true, theta_modular},
        {"gamma_reflection", M::SpecialFn, "elliptic gamma reflection and symmetry", 1e-10, 0, false, true, true,
         gamma_reflection},
        {"gamma_shifts", M::SpecialFn, "elliptic gamma shift equations", 1e-10, 0, false, true, true, gamma_shifts},
        {"G_normalization", M::SpecialFn, "modified gamma normalization", 1e-10, 0, false, true, true,
         g_normalization},
        {"G_reflection", M::SpecialFn, "modified gamma reflection", 1e-10, 0, false, true, true, g_reflection},
        {"G_forms", M::SpecialFn, "modified gamma product vs modular form", 1e-9, 0, false, true, true, g_forms},
        {"quadrature_exact", M::Contour, "trapezoid exactness on Laurent polynomials", 1e-12, 64, false, true, true,
         quadrature_exact},
        {"residue_correction", M::Contour, "contour deformation past simple poles", 1e-10, 256, false, true, true,
         residue_correction},
    };
}

}  // namespace ellint
