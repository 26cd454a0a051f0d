// One seeded draw per call for each integral identity.
#include <array>
#include <tuple>
#include <cmath>

#include "ellint/operators.hpp"
#include "ellint/parallel.hpp"
#include "ellint/perm_engine.hpp"
#include "ellint/sklyanin.hpp"
#include "ellint/special_fn.hpp"
#include "suite_support.hpp"

namespace ellint {

namespace {

// Every strict domain inequality is enforced with this multiplicative margin.
constexpr double kMargin = 0.8;
constexpr int kMaxAttempts = 100;
// Offset that breaks an identity in the negative controls.
constexpr double kBreak = 0.01;

KernelVariant kernel_variant(Regime r) {
    if (r == Regime::QUnitCircle) throw DomainError("integral identities need |q| != 1");
    return r == Regime::QGreater1 ? KernelVariant::QGreater1 : KernelVariant::QLess1;
}

// Additive argument a of S1(a) with multiplicative parameter t.
cplx s1_argument(const KernelSet& k, cplx t) { return k.variant() == KernelVariant::QGreater1 ? log2pi(t) : -log2pi(t); }

void log_kernels(DrawLog* log, const KernelSet& k, int attempts) {
    if (!log) return;
    log->add("p", k.p());
    log->add("q_inside", k.q());
    log->add("rejected", std::to_string(attempts));
}

cplx laurent(std::span<const cplx> c, cplx y) {
    cplx v = c[0];
    for (std::size_t k = 1; k < c.size(); ++k) v += c[k] * (ipow(y, static_cast<long>(k)) + ipow(y, -static_cast<long>(k)));
    return v;
}

double grid_residual(std::span<const cplx> got, std::span<const cplx> want) {
    double diff = 0, scale = 1;
    for (std::size_t i = 0; i < got.size(); ++i) {
        diff = std::max(diff, std::abs(got[i] - want[i]));
        scale = std::max(scale, std::abs(want[i]));
    }
    return diff / scale;
}

// Moduli with |p|, |q_inside| in [lo, hi].
Moduli draw_moduli(Sampler& s, double lo, double hi, Regime regime) { return s.moduli(lo, hi, lo, hi, regime); }

// Two S1 parameters with |t_a|, |t_b| <= 0.8 and sqrt|pq| < 0.8 |t_a t_b|.
struct PairDraw {
    Moduli m;
    cplx ta, tb;
};

PairDraw draw_pair(std::uint64_t seed, std::string_view stream, Regime regime, int& attempts) {
    auto [d, a] = draw_until<PairDraw>(seed, stream, kMaxAttempts, [&](Sampler& s) -> std::optional<PairDraw> {
        const Moduli m = draw_moduli(s, 0.05, 0.3, regime);
        const KernelSet k(m, kernel_variant(regime));
        const cplx ta = s.polar(0.35, kMargin), tb = s.polar(0.35, kMargin);
        if (std::abs(k.root()) >= kMargin * std::abs(ta * tb)) return std::nullopt;
        for (cplx t : {ta, tb, ta * tb})
            if (support::lattice_distance(t * t, k.p(), k.q()) < 1e-3) return std::nullopt;
        return PairDraw{m, ta, tb};
    });
    attempts = a;
    return d;
}

}  // namespace

double check_beta_integral(std::uint64_t seed, Regime regime, int n, bool unbalanced, DrawLog* log) {
    struct Draw {
        Moduli m;
        std::array<cplx, 6> t;
    };
    const auto [d, attempts] = draw_until<Draw>(seed, "beta", kMaxAttempts, [&](Sampler& s) -> std::optional<Draw> {
        const Moduli m = s.moduli(0.05, 0.5, 0.05, 0.5, regime);
        const KernelSet k(m, kernel_variant(regime));
        const cplx pq = k.p() * k.q();
        // log|t_k| = log 0.8 + w_k (log|pq| - 6 log 0.8) with random simplex weights w_k: all |t_k| <= 0.8
        // and the product has modulus |pq|.
        std::array<double, 6> w;
        double total = 0;
        for (double& x : w) total += (x = -std::log(s.uniform(1e-12, 1.0)));
        const double span = std::log(std::abs(pq)) - 6 * std::log(kMargin);
        std::array<cplx, 6> t;
        cplx prod = 1;
        for (int i = 0; i < 5; ++i) {
            t[i] = std::exp(std::log(kMargin) + w[i] / total * span) * s.phase();
            prod *= t[i];
        }
        t[5] = pq / prod;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                if (support::lattice_distance(t[i] * t[j], k.p(), k.q()) < 1e-3) return std::nullopt;
        return Draw{m, t};
    });
    const KernelSet k(d.m, kernel_variant(regime));
    auto t = d.t;
    if (unbalanced) t[5] *= e2pi(kBreak);
    auto integrand = [&](cplx z) {
        cplx v = theta_mult(z * z, k.p()) * theta_mult(1.0 / (z * z), k.q());
        for (cplx c : t) v *= k.gamma(c * z) * k.gamma(c / z);
        return v;
    };
    const cplx lhs = k.kappa() * circle_quadrature(integrand, n);
    cplx rhs = 1;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) rhs *= k.gamma(t[i] * t[j]);
    if (log) {
        log_kernels(log, k, attempts);
        for (int i = 0; i < 6; ++i) log->add("t" + std::to_string(i + 1), t[i]);
    }
    return std::abs(lhs - rhs) / std::abs(rhs);
}

double check_coxeter_kernel(std::uint64_t seed, Regime regime, int n, bool shifted, DrawLog* log) {
    int attempts = 0;
    const PairDraw d = draw_pair(seed, "coxeter_kernel", regime, attempts);
    const KernelSet k(d.m, kernel_variant(regime));
    const cplx a = s1_argument(k, d.ta), b = s1_argument(k, d.tb);
    const cplx b_rhs = shifted ? b + kBreak : b;
    auto W = [&](cplx arg, cplx y, cplx x) {
        const cplx t = k.s1_parameter(arg);
        return k.s1_norm(t) * k.s1_kernel(t, y, x);
    };
    Sampler pts(seed, "coxeter_kernel/points");
    const auto nodes = circle_nodes(n);
    std::vector<cplx> lhs(20), rhs(20);
    for (int i = 0; i < 20; ++i) {
        const cplx z1 = pts.phase(), z2 = pts.phase(), x = pts.phase();
        cplx sum = 0;
        for (cplx z : nodes) sum += W(a, z1, z) * k.s2_weight(a + b, z, z2) * W(b, z, x);
        lhs[i] = sum / static_cast<double>(n);
        rhs[i] = k.s2_weight(b_rhs, z1, z2) * W(a + b, z1, x) * k.s2_weight(a, x, z2);
    }
    if (log) {
        log_kernels(log, k, attempts);
        log->add("a", a);
        log->add("b", b);
    }
    return grid_residual(lhs, rhs);
}

double check_coxeter_cubic(std::uint64_t seed, Regime regime, int n, bool shifted, DrawLog* log) {
    int attempts = 0;
    const PairDraw d = draw_pair(seed, "coxeter", regime, attempts);
    const KernelSet k(d.m, kernel_variant(regime));
    const cplx a = s1_argument(k, d.ta), b = s1_argument(k, d.tb);
    const Fn2 f = [](cplx x, cplx y) {
        return (x + 1.0 / x) * (y + 1.0 / y) + 0.3 * (x * x + 1.0 / (x * x)) + 0.2 * (y * y + 1.0 / (y * y)) + 0.1;
    };
    // S1(a) S2(a+b) S1(b) = S2(b) S1(a+b) S2(a), S1 on the first variable.
    auto lhs = TorusGrid::sample(n, f);
    apply_along(lhs, 0, s1_matrix(k, b, n));
    multiply_pair(lhs, 0, 1, s2_matrix(k, a + b, n));
    apply_along(lhs, 0, s1_matrix(k, a, n));
    auto rhs = TorusGrid::sample(n, f);
    multiply_pair(rhs, 0, 1, s2_matrix(k, a, n));
    apply_along(rhs, 0, s1_matrix(k, a + b, n));
    multiply_pair(rhs, 0, 1, s2_matrix(k, shifted ? b + kBreak : b, n));
    if (log) {
        log_kernels(log, k, attempts);
        log->add("a", a);
        log->add("b", b);
    }
    return grid_residual(lhs.values, rhs.values);
}

double check_inversion(std::uint64_t seed, Regime regime, int n, bool weak, bool wrong_t, DrawLog* log) {
    struct Draw {
        Moduli m;
        cplx t;
        std::array<cplx, 5> coeff;
        std::array<cplx, 10> xs;
    };
    const auto [d, attempts] = draw_until<Draw>(seed, weak ? "inversion_weak" : "inversion", kMaxAttempts,
                                                [&](Sampler& s) -> std::optional<Draw> {
        const Moduli m = draw_moduli(s, 0.05, 0.3, regime);
        const KernelSet k(m, kernel_variant(regime));
        const double big = std::max(std::abs(k.p()), std::abs(k.q()));
        // Strong: max(|p|,|q|) < |t|^2 < 1. Weak: max(|p|,|q|) < |t| only, with |t|^2 below the strong bound.
        const double lo = big / kMargin;
        const double hi = weak ? std::sqrt(kMargin * big) : 0.6;
        if (!(lo < hi)) return std::nullopt;
        const double mod = weak ? s.uniform(lo, hi) : std::sqrt(s.uniform(lo, hi));
        const cplx t = mod * s.phase();
        for (cplx x : {t * t, 1.0 / (t * t)})
            if (support::lattice_distance(x, k.p(), k.q()) < 1e-3) return std::nullopt;
        Draw out{m, t, {}, {}};
        for (cplx& c : out.coeff) c = s.polar(0, 1);
        for (cplx& x : out.xs) x = s.phase();
        return out;
    });
    const KernelSet k(d.m, kernel_variant(regime));
    const auto& coeff = d.coeff;
    const Fn1 f = [&coeff](cplx y) { return laurent(coeff, y); };
    const auto got = inversion_values(k, d.t, f, d.xs, n, wrong_t ? std::optional<cplx>(d.t * e2pi(kBreak)) : std::nullopt);
    std::vector<cplx> want;
    for (cplx x : d.xs) want.push_back(f(x));
    if (log) {
        log_kernels(log, k, attempts);
        log->add("t", d.t);
    }
    return grid_residual(got, want);
}

namespace {

struct BaileyDraw {
    PairDraw pair;
    cplx y;
    std::array<cplx, 4> germ;
    int attempts;
};

BaileyDraw draw_bailey(std::uint64_t seed, std::string_view stream, Regime regime) {
    int attempts = 0;
    PairDraw pair = draw_pair(seed, stream, regime, attempts);
    BaileyDraw d{pair, {}, {}, attempts};
    Sampler s(seed, std::string(stream) + "/data");
    d.y = s.phase();
    for (cplx& c : d.germ) c = s.polar(0, 1);
    return d;
}

void log_bailey(DrawLog* log, const KernelSet& k, const BaileyDraw& d) {
    if (!log) return;
    log_kernels(log, k, d.attempts);
    log->add("s", d.pair.ta);
    log->add("t", d.pair.tb);
    log->add("y", d.y);
}

}  // namespace

double check_bailey_STR(std::uint64_t seed, Regime regime, int n, bool shifted, DrawLog* log) {
    const BaileyDraw d = draw_bailey(seed, "bailey_str", regime);
    const KernelSet k(d.pair.m, kernel_variant(regime));
    const cplx s = d.pair.ta, t = d.pair.tb, y = d.y;
    const auto nodes = circle_nodes(n);
    const auto& germ = d.germ;
    const Fn1 f = [&germ](cplx x) { return laurent(germ, x); };
    Eigen::VectorXcd fv(n), dst(n), ds(n), dt(n);
    for (int j = 0; j < n; ++j) {
        fv(j) = f(nodes[j]);
        dst(j) = bailey_D(k, s * t, y, nodes[j]);
        ds(j) = bailey_D(k, s, y, nodes[j]);
        dt(j) = bailey_D(k, shifted ? t * e2pi(kBreak) : t, y, nodes[j]);
    }
    // M(s) D(st) M(t) f = D(t) M(st) D(s) f
    const Eigen::VectorXcd lhs = s1_matrix_t(k, s, n) * dst.cwiseProduct(s1_matrix_t(k, t, n) * fv);
    const Eigen::VectorXcd rhs = dt.cwiseProduct(s1_matrix_t(k, s * t, n) * ds.cwiseProduct(fv));
    log_bailey(log, k, d);
    return grid_residual({lhs.data(), static_cast<std::size_t>(n)}, {rhs.data(), static_cast<std::size_t>(n)});
}

double check_bailey_lemma(std::uint64_t seed, Regime regime, int n, bool shifted, DrawLog* log) {
    const BaileyDraw d = draw_bailey(seed, "bailey_lemma", regime);
    const KernelSet k(d.pair.m, kernel_variant(regime));
    const cplx s = d.pair.ta, t = d.pair.tb, y = d.y;
    const auto nodes = circle_nodes(n);
    Eigen::VectorXcd alpha(n), dst(n), ds(n), dti(n);
    for (int j = 0; j < n; ++j) {
        alpha(j) = laurent(d.germ, nodes[j]);
        dst(j) = bailey_D(k, s * t, y, nodes[j]);
        ds(j) = bailey_D(k, s, y, nodes[j]);
        dti(j) = bailey_D(k, 1.0 / (shifted ? t * e2pi(kBreak) : t), y, nodes[j]);
    }
    // (alpha, beta = M(t) alpha) -> (D(s) alpha, D(1/t) M(s) D(st) beta), again a pair for M(st).
    const Eigen::VectorXcd beta = s1_matrix_t(k, t, n) * alpha;
    const Eigen::VectorXcd beta_new = dti.cwiseProduct(s1_matrix_t(k, s, n) * dst.cwiseProduct(beta));
    const Eigen::VectorXcd from_alpha = s1_matrix_t(k, s * t, n) * ds.cwiseProduct(alpha);
    log_bailey(log, k, d);
    return grid_residual({beta_new.data(), static_cast<std::size_t>(n)},
                         {from_alpha.data(), static_cast<std::size_t>(n)});
}

double check_star_triangle_functional(std::uint64_t seed, Regime regime, int n, bool shifted, DrawLog* log) {
    int attempts = 0;
    const PairDraw d = draw_pair(seed, "star_triangle", regime, attempts);
    const KernelSet k(d.m, kernel_variant(regime));
    const cplx a = s1_argument(k, d.ta), b = s1_argument(k, d.tb);
    const cplx A = k.s1_parameter(a), B = k.s1_parameter(b);
    // Crossing parameter: the three kernels balance, A^2 r^2 B^2 = pq.
    const cplx r = k.root() / (A * B) * (shifted ? e2pi(kBreak) : 1.0);
    Sampler pts(seed, "star_triangle/points");
    const auto nodes = circle_nodes(n);
    std::vector<cplx> lhs, rhs;
    for (int i = 0; i < 5; ++i) {
        const cplx X = pts.phase(), Y = pts.phase(), W = pts.phase();
        cplx sum = 0;
        for (cplx u : nodes)
            sum += k.s2_weight_r(A, X, u) * k.s2_weight_r(r, Y, u) * k.s2_weight_r(B, W, u) * theta_mult(u * u, k.p()) *
                   theta_mult(1.0 / (u * u), k.q());
        lhs.push_back(k.kappa() * sum / static_cast<double>(n));
        rhs.push_back(k.gamma(A * A) * k.gamma(B * B) * k.gamma(r * r) * k.s2_weight_r(A * r, X, Y) *
                      k.s2_weight_r(A * B, X, W) * k.s2_weight_r(r * B, Y, W));
    }
    if (log) {
        log_kernels(log, k, attempts);
        log->add("a", a);
        log->add("b", b);
    }
    double worst = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]) / std::abs(rhs[i]));
    return worst;
}

double check_intertwining(std::uint64_t seed, IntertwinedSide which, GeneratorFamily family, Regime regime, int n,
                          bool same_spin, DrawLog* log) {
    const bool partner = family == GeneratorFamily::ModularPartner;
    struct Draw {
        Moduli m;
        cplx t;
        std::array<double, 3> xs;
    };
    const std::string stream = std::string("intertwining/") + (which == IntertwinedSide::S1 ? "S1/" : "S3/") +
                               (partner ? "partner" : "modified");
    const auto [d, attempts] = draw_until<Draw>(seed, stream, kMaxAttempts, [&](Sampler& s) -> std::optional<Draw> {
        // The shift base (q, or p for the partner) dominates; |t| stays below the shifted kernel's pole bound.
        const double shift_base = s.uniform(0.3, 0.5), other = s.uniform(0.05, kMargin * shift_base);
        const cplx big = shift_base * s.phase(), small = other * s.phase();
        cplx p = partner ? big : small, q = partner ? small : big;
        const Moduli m = Moduli::from_bases(p, regime == Regime::QGreater1 ? 1.0 / q : q);
        const double bound = partner ? std::sqrt(shift_base * other) : shift_base;
        const cplx t = s.polar(0.3 * bound, kMargin * bound);
        const KernelSet k(m, kernel_variant(regime));
        if (support::lattice_distance(t * t, k.p(), k.q()) < 1e-3) return std::nullopt;
        Draw out{m, t, {}};
        for (double& x : out.xs) x = s.uniform(0.06, 0.44);
        return out;
    });
    const KernelSet k(d.m, kernel_variant(regime));
    const cplx eta = d.m.eta();
    const cplx g = s1_argument(k, d.t);
    const cplx ell = g / (2.0 * eta) - 0.5;
    const Variant v = partner ? Variant::ModularPartner : Variant::Modified;

    // The second variable carries the representation; for S1 the first variable is absent.
    const bool two = which == IntertwinedSide::S3;
    auto F = [two](cplx z1, cplx z2) {
        const cplx one = std::cos(2 * pi * z2) + 0.3 * std::cos(4 * pi * z2) + 0.1;
        if (!two) return one;
        return (std::cos(2 * pi * z1) + 0.2) * std::cos(2 * pi * z2) + 0.3 * std::cos(4 * pi * z1) * std::cos(4 * pi * z2) +
               0.1 * one;
    };
    const auto nodes = circle_nodes(n);
    const std::vector<cplx> spectators = two ? std::vector<cplx>{{0.17, 0.02}, {0.31, -0.015}} : std::vector<cplx>{0.0};

    double worst = 0;
    for (int a = 0; a < 4; ++a) {
        const DifferenceOperator before = make_generator(a, ell, d.m, v);
        const DifferenceOperator after = make_generator(a, same_spin ? ell : -1.0 - ell, d.m, v);
        for (cplx z1 : spectators) {
            const ZFn f = [&](cplx z) { return F(z1, z); };
            std::vector<cplx> f_nodes(n), transformed(n);
            parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
                const cplx z = log2pi(nodes[j]);
                f_nodes[j] = f(z);
                transformed[j] = before.apply(f, z);
            });
            const ZFn s1f = [&](cplx z) { return s1_at(k, g, f_nodes, e2pi(z)); };
            for (double x : d.xs) {
                const cplx zo{x, 0.01};
                const cplx lhs = s1_at(k, g, transformed, e2pi(zo));
                const cplx rhs = after.apply(s1f, zo);
                const double scale = std::max({1.0, std::abs(lhs), after.magnitude(s1f, zo)});
                worst = std::max(worst, std::abs(lhs - rhs) / scale);
            }
        }
    }
    if (log) {
        log_kernels(log, k, attempts);
        log->add("eta", eta);
        log->add("tau", d.m.tau());
        log->add("ell", ell);
    }
    return worst;
}

namespace {

struct RllDraw {
    Moduli m;
    RParams r;
};

// Multiplicative differences A = e(v1-u1), C = e(u2-v1), B = e(v2-u2) sized for the half-period shifts of L.
RllDraw draw_rll(std::uint64_t seed, bool doubled, int& attempts) {
    auto [d, a] = draw_until<RllDraw>(seed, doubled ? "rll_double" : "rll", kMaxAttempts,
                                      [&](Sampler& s) -> std::optional<RllDraw> {
        const double shift_base = s.uniform(0.45, 0.55), other = s.uniform(0.015, 0.035);
        const cplx big = shift_base * s.phase(), small = other * s.phase();
        const Moduli m = doubled ? Moduli::from_bases(big, small) : Moduli::from_bases(small, big);
        const cplx A = s.polar(0.5 * shift_base, kMargin * shift_base), B = s.polar(0.5 * shift_base, kMargin * shift_base);
        const double c = 1.0 / std::sqrt(std::abs(A) * std::abs(B));
        if (c > kMargin * std::sqrt(shift_base / other)) return std::nullopt;
        const cplx C = c * s.phase();
        const cplx u1 = s.uniform(-0.3, 0.3), v1 = u1 + log2pi(A), u2 = v1 + log2pi(C), v2 = u2 + log2pi(B);
        return RllDraw{m, {u1, u2, v1, v2}};
    });
    attempts = a;
    return d;
}

void log_rparams(DrawLog* log, const RParams& r) {
    if (!log) return;
    log->add("u1", r.u1);
    log->add("u2", r.u2);
    log->add("v1", r.v1);
    log->add("v2", r.v2);
}

using ZFn2 = std::function<cplx(cplx, cplx)>;

// (L1 sigma3 L2)_{ik} acting on f(z1, z2): L1 entries on z1, L2 entries on z2.
cplx l_sigma_l(const OperatorMatrix& L1, const OperatorMatrix& L2, int i, int k, const ZFn2& f, cplx z1, cplx z2) {
    cplx total = 0;
    for (int j = 0; j < 2; ++j) {
        const double sign = j == 0 ? 1.0 : -1.0;
        const ZFn inner = [&](cplx a) { return L2[j][k].apply([&](cplx b) { return f(a, b); }, z2); };
        total += sign * L1[i][j].apply(inner, z1);
    }
    return total;
}

}  // namespace

double check_RLL(std::uint64_t seed, bool doubled, int n, bool swapped, DrawLog* log) {
    int attempts = 0;
    const RllDraw d = draw_rll(seed, doubled, attempts);
    const KernelSet k(d.m, KernelVariant::QLess1);
    const RParams& r = d.r;
    const cplx eta = d.m.eta();
    const Variant v = doubled ? Variant::ModularPartner : Variant::Modified;
    const auto Lu = L_operator(SiteParams::from_pair(r.u1, r.u2, eta), d.m, v);
    const auto Lv = L_operator(SiteParams::from_pair(r.v1, r.v2, eta), d.m, v);
    const ZFn2 f = [](cplx z1, cplx z2) {
        return (std::cos(2 * pi * z1) + 0.2) * (std::cos(2 * pi * z2) - 0.3) + 0.5 * std::cos(4 * pi * z1);
    };
    const ROperator R(k, r, n);
    const auto Rf = R.prepare([&](cplx y1, cplx y2) { return f(log2pi(y1), log2pi(y2)); });
    const ZFn2 rf = [&](cplx z1, cplx z2) { return Rf(e2pi(z1), e2pi(z2)); };

    const auto p1 = sample_points(10, 0.02), p2 = sample_points(13, -0.03);
    const auto& left1 = Lu;
    const auto& left2 = Lv;
    const auto& right1 = swapped ? Lu : Lv;
    const auto& right2 = swapped ? Lv : Lu;
    double worst = 0;
    for (int i = 0; i < 2; ++i)
        for (int kk = 0; kk < 2; ++kk) {
            // R (L1(u) sigma3 L2(v)) f = (L1(v) sigma3 L2(u)) R f
            const auto lhs_action = R.prepare([&](cplx y1, cplx y2) {
                return l_sigma_l(left1, left2, i, kk, f, log2pi(y1), log2pi(y2));
            });
            std::vector<double> res(p1.size());
            parallel_for(p1.size(), [&](std::size_t j) {
                const cplx z1 = p1[j], z2 = p2[(j + 3) % p2.size()];
                const cplx lhs = lhs_action(e2pi(z1), e2pi(z2));
                // The shifts reach only four distinct points; each R f value costs a full quadrature.
                std::vector<std::tuple<cplx, cplx, cplx>> seen;
                const ZFn2 memo = [&](cplx a, cplx b) {
                    for (const auto& [x, y, v] : seen)
                        if (std::abs(x - a) < 1e-14 && std::abs(y - b) < 1e-14) return v;
                    const cplx v = rf(a, b);
                    seen.emplace_back(a, b, v);
                    return v;
                };
                const cplx rhs = l_sigma_l(right1, right2, i, kk, memo, z1, z2);
                res[j] = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
            });
            for (double x : res) worst = std::max(worst, x);
        }
    if (log) {
        log_kernels(log, k, attempts);
        log->add("eta", eta);
        log->add("tau", d.m.tau());
        log_rparams(log, r);
    }
    return worst;
}

double check_R_direct(std::uint64_t seed, int n, DrawLog* log) {
    Sampler s(seed, "R_direct");
    const Moduli m = s.moduli(0.05, 0.2, 0.05, 0.2, Regime::QLess1);
    const KernelSet k(m, KernelVariant::QLess1);
    const double c = s.uniform(0.05, 0.12);
    const RParams r{s.uniform(-0.3, 0.3), s.uniform(-0.3, 0.3), {s.uniform(-0.3, 0.3), c}, {s.uniform(-0.3, 0.3), c}};
    const Fn2 f = [](cplx a, cplx b) { return (a + 1.0 / a) * (b + 1.0 / b) + 0.2 * (a * a + 1.0 / (a * a)) + 0.1; };
    const ROperator R(k, r, n);
    const auto act = R.prepare(f);
    std::vector<cplx> fact, direct;
    for (int i = 0; i < 3; ++i) {
        const cplx z1 = s.phase(), z2 = s.phase();
        // The single-integral form carries the exchange of the two variables.
        fact.push_back(act(z2, z1));
        direct.push_back(R_direct(k, r, f, z1, z2, n));
    }
    if (log) {
        log_kernels(log, k, 0);
        log_rparams(log, r);
    }
    return grid_residual(fact, direct);
}

namespace {

struct YbeDraw {
    Moduli m;
    std::array<cplx, 6> u;  // u1, u2, v1, v2, w1, w2
};

// Imaginary parts step by d between the three sites, keeping every kernel of both sides inside its domain.
YbeDraw draw_ybe(std::uint64_t seed, std::string_view stream) {
    Sampler s(seed, stream);
    const Moduli m = s.moduli(0.04, 0.07, 0.04, 0.07, Regime::QLess1);
    const double d = s.uniform(0.11, 0.125), c = s.uniform(-0.01, 0.01);
    YbeDraw out{m, {}};
    const std::array<double, 6> im{0, c, d, c + d, 2 * d, c + 2 * d};
    for (int i = 0; i < 6; ++i) out.u[i] = {s.uniform(-0.3, 0.3), im[i]};
    return out;
}

void log_ybe(DrawLog* log, const KernelSet& k, const YbeDraw& d) {
    if (!log) return;
    log_kernels(log, k, 0);
    const char* names[] = {"u1", "u2", "v1", "v2", "w1", "w2"};
    for (int i = 0; i < 6; ++i) log->add(names[i], d.u[i]);
}

void require_word_gate() {
    if (!perm::ybe_word_gate().pass) throw DomainError("word-level gate failed; numeric check refused");
}

const Fn3 kYbeProbe = [](cplx x, cplx y, cplx z) { return (x + 1.0 / x) * (y + 1.0 / y) * (z + 1.0 / z); };

double sup(const TorusGrid& g) {
    double m = 0;
    for (cplx v : g.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

double check_YBE(std::uint64_t seed, int n, bool misassigned, DrawLog* log) {
    require_word_gate();
    const YbeDraw d = draw_ybe(seed, "ybe");
    const KernelSet k(d.m, KernelVariant::QLess1);
    const auto [u1, u2, v1, v2, w1, w2] = d.u;

    // Check operator P R on an axis pair; the 1-3 version is conjugated by the 2-3 exchange.
    auto check12 = [&](TorusGrid& g, cplx a1, cplx a2, cplx b1, cplx b2, int x, int y) {
        ROperator(k, {a1, a2, b1, b2}, n).apply_grid(g, x, y);
        swap_axes(g, x, y);
    };
    auto check13 = [&](TorusGrid& g, cplx a1, cplx a2, cplx b1, cplx b2) {
        swap_axes(g, 1, 2);
        check12(g, a1, a2, b1, b2, 0, 1);
        swap_axes(g, 1, 2);
    };
    const cplx wm = misassigned ? w1 + kBreak : w1;
    auto lhs = TorusGrid::sample(n, kYbeProbe);
    const double norm = sup(lhs);
    auto rhs = lhs;
    check12(lhs, u1, u2, v1, v2, 0, 1);
    check13(lhs, u1, u2, wm, w2);
    check12(lhs, v1, v2, w1, w2, 1, 2);
    check12(rhs, v1, v2, w1, w2, 1, 2);
    check13(rhs, u1, u2, w1, w2);
    check12(rhs, u1, u2, v1, v2, 0, 1);
    double diff = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i) diff = std::max(diff, std::abs(lhs.values[i] - rhs.values[i]));
    log_ybe(log, k, d);
    return diff / norm;
}

double check_YBE_words(std::uint64_t seed, int n, DrawLog* log) {
    require_word_gate();
    const YbeDraw d = draw_ybe(seed, "ybe_words");
    const KernelSet k(d.m, KernelVariant::QLess1);
    const std::vector<cplx> tuple(d.u.begin(), d.u.end());
    // S_{2i-1} is S1 on axis i-1; S_{2i} is the multiplier on axes (i-1, i).
    auto apply_word = [&](const perm::Word& w) {
        auto g = TorusGrid::sample(n, kYbeProbe);
        const auto factors = perm::expand_annotated(w, tuple);
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
            const cplx arg = it->left - it->right;
            if (it->gen % 2 == 1)
                apply_along(g, (it->gen - 1) / 2, s1_matrix(k, arg, n));
            else
                multiply_pair(g, it->gen / 2 - 1, it->gen / 2, s2_matrix(k, arg, n));
        }
        return g;
    };
    const auto lhs = apply_word(perm::ybe_lhs()), rhs = apply_word(perm::ybe_rhs());
    double diff = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i) diff = std::max(diff, std::abs(lhs.values[i] - rhs.values[i]));
    log_ybe(log, k, d);
    return diff / sup(TorusGrid::sample(n, kYbeProbe));
}

}  // namespace ellint
