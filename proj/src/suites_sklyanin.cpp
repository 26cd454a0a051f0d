// Algebraic checks of the difference-operator realizations on the fixed test family.
#include "ellint/sklyanin.hpp"
#include "ellint/special_fn.hpp"
#include "suite_support.hpp"

namespace ellint {

namespace {

using support::Worst;

constexpr int kDraws = 5;

struct Setting {
    Moduli m;
    Variant v;
};

// Every realization available in the regime, on one moduli draw; SecondDouble gets its own real eta.
std::vector<Setting> settings(Sampler& s, const RunContext& ctx) {
    const Moduli m = s.moduli(std::max(ctx.modulus_min, 0.05), std::min(ctx.modulus_max, 0.5),
                              std::max(ctx.modulus_min, 0.05), std::min(ctx.modulus_max, 0.5), ctx.regime);
    std::vector<Setting> out{{m, Variant::Standard}, {m, Variant::Modified}, {m, Variant::ModularPartner}};
    if (ctx.regime == Regime::QLess1) {
        out.push_back({m, Variant::HalfShifted});
        out.push_back({Moduli(s.uniform(0.3, 0.45), {s.uniform(-0.3, 0.3), s.uniform(0.6, 1.2)}),
                       Variant::SecondDouble});
    }
    return out;
}

cplx draw_ell(Sampler& s) { return {s.uniform(-1.5, 1.5), s.uniform(-0.3, 0.3)}; }

void log_setting(DrawLog& l, const Setting& st, cplx ell) {
    l.add("variant", to_string(st.v));
    l.add("eta", st.m.eta());
    l.add("tau", st.m.tau());
    l.add("ell", ell);
}

template <class Check>
SuiteOutcome variant_sweep(const RunContext& ctx, const char* stream, Check check) {
    Sampler s(ctx.seed, stream);
    Worst w;
    const auto zs = sample_points(8, 0.01);
    for (int i = 0; i < kDraws; ++i)
        for (const Setting& st : settings(s, ctx)) {
            const cplx ell = draw_ell(s);
            const auto fns = test_family(st.m.tau());
            w.offer(check(ell, st.m, st.v, fns, zs), [&](DrawLog& l) { log_setting(l, st, ell); });
        }
    return w.finish();
}

SuiteOutcome relations(const RunContext& ctx, int) {
    return variant_sweep(ctx, "sklyanin_relations", [](cplx ell, const Moduli& m, Variant v, auto& fns, auto& zs) {
        return quadratic_relations_residual(ell, m, v, fns, zs);
    });
}

SuiteOutcome casimir(const RunContext& ctx, int) {
    return variant_sweep(ctx, "casimir_values", [](cplx ell, const Moduli& m, Variant v, auto& fns, auto& zs) {
        return casimir_check(ell, m, v, fns, zs);
    });
}

SuiteOutcome commutation(const RunContext& ctx, int) {
    return variant_sweep(ctx, "casimir_commutation",
                         [](cplx ell, const Moduli& m, Variant v, auto& fns, auto& zs) {
                             return casimir_commutation_check(ell, m, v, fns, zs);
                         });
}

// J_ab = (J_b - J_a) / J_c on cyclic triples.
SuiteOutcome constants(const RunContext& ctx, int) {
    Sampler s(ctx.seed, "structure_constants");
    Worst w;
    for (int i = 0; i < 50; ++i) {
        const cplx tau = log2pi(s.polar(ctx.modulus_min, ctx.modulus_max));
        const cplx eta{s.uniform(-0.5, 0.5), s.uniform(-0.4, 0.4) * tau.imag()};
        const auto c = structure_constants(eta, tau);
        const double r = std::max({support::rel(c.J12, (c.J2 - c.J1) / c.J3), support::rel(c.J23, (c.J3 - c.J2) / c.J1),
                                   support::rel(c.J31, (c.J1 - c.J3) / c.J2)});
        w.offer(r, [&](DrawLog& l) {
            l.add("eta", eta);
            l.add("tau", tau);
        });
    }
    return w.finish();
}

SuiteOutcome factorization(const RunContext& ctx, int) {
    Sampler s(ctx.seed, "L_factorization");
    Worst w;
    const auto zs = sample_points(8, 0.01);
    std::vector<Variant> variants{Variant::Standard};
    if (ctx.regime == Regime::QLess1) variants.push_back(Variant::HalfShifted);
    for (int i = 0; i < kDraws; ++i) {
        const Moduli m = s.moduli(0.05, 0.5, 0.05, 0.5, ctx.regime);
        const SiteParams site{{s.uniform(-0.5, 0.5), s.uniform(-0.05, 0.05)}, draw_ell(s)};
        const auto fns = test_family(m.tau());
        for (Variant v : variants) {
            const auto L = L_operator(site, m, v);
            const auto F = L_factorized(site, m, v);
            double r = 0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) r = std::max(r, operator_residual(L[a][b], F[a][b], fns, zs));
            w.offer(r, [&](DrawLog& l) {
                log_setting(l, {m, v}, site.ell);
                l.add("u", site.u);
            });
        }
    }
    return w.finish();
}

// At l = 1/2 the standard generators act on {theta4, theta3} (modulus tau/2) as c sigma_a, one c for all a.
SuiteOutcome spin_half(const RunContext& ctx, int) {
    Sampler s(ctx.seed, "spin_half");
    Worst w;
    for (int i = 0; i < kDraws; ++i) {
        const Moduli m = s.moduli(0.05, 0.5, 0.05, 0.5, ctx.regime);
        const cplx c = spin_half_matrix(make_generator(0, 0.5, m, Variant::Standard), m.tau()).matrix.trace() / 2.0;
        double r = 0;
        for (int a = 0; a < 4; ++a) {
            const auto b = spin_half_matrix(make_generator(a, 0.5, m, Variant::Standard), m.tau());
            const double scale = std::max(1.0, std::abs(c));
            r = std::max({r, b.fit_residual, (b.matrix - c * pauli(a)).cwiseAbs().maxCoeff() / scale});
        }
        w.offer(r, [&](DrawLog& l) {
            l.add("eta", m.eta());
            l.add("tau", m.tau());
        });
    }
    return w.finish();
}

}  // namespace

std::vector<Suite> sklyanin_suites() {
    using M = Module;
    return {
        {"structure_constants", M::Sklyanin, "structure constant relations", 1e-12, 0, false, true, true, constants},
        {"sklyanin_relations", M::Sklyanin, "quadratic algebra relations", 1e-9, 0, false, true, true, relations},
        {"casimir_values", M::Sklyanin, "Casimir eigenvalues", 1e-9, 0, false, true, true, casimir},
        {"casimir_commutation", M::Sklyanin, "Casimirs are central", 1e-9, 0, false, true, true, commutation},
        {"L_factorization", M::Sklyanin, "L-operator factorization", 1e-9, 0, false, true, true, factorization},
        {"spin_half", M::Sklyanin, "spin-1/2 reduction to Pauli matrices", 1e-9, 0, false, true, true, spin_half},
    };
}

}  // namespace ellint
