#include "ellint/sklyanin.hpp"

#include <algorithm>
#include <cmath>

#include "ellint/special_fn.hpp"

namespace ellint {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::Standard: return "Standard";
        case Variant::Modified: return "Modified";
        case Variant::HalfShifted: return "HalfShifted";
        case Variant::ModularPartner: return "ModularPartner";
        case Variant::SecondDouble: return "SecondDouble";
    }
    return "?";
}

cplx DifferenceOperator::apply(const ZFn& f, cplx z) const {
    cplx acc = 0.0;
    for (const Term& t : terms_) acc += t.coeff(z) * f(z + t.shift);
    return acc;
}

double DifferenceOperator::magnitude(const ZFn& f, cplx z) const {
    double acc = 0.0;
    for (const Term& t : terms_) acc += std::abs(t.coeff(z) * f(z + t.shift));
    return acc;
}

ZFn DifferenceOperator::apply(ZFn f) const {
    return [op = *this, f = std::move(f)](cplx z) { return op.apply(f, z); };
}

double DifferenceOperator::max_shift_imag() const {
    double m = 0.0;
    for (const Term& t : terms_) m = std::max(m, std::abs(t.shift.imag()));
    return m;
}

DifferenceOperator operator*(const DifferenceOperator& a, const DifferenceOperator& b) {
    std::vector<DifferenceOperator::Term> out;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            const cplx sa = ta.shift;
            out.push_back({[ca = ta.coeff, cb = tb.coeff, sa](cplx z) { return ca(z) * cb(z + sa); }, sa + tb.shift});
        }
    return {std::move(out), a.variant_};
}

DifferenceOperator operator+(const DifferenceOperator& a, const DifferenceOperator& b) {
    std::vector<DifferenceOperator::Term> out = a.terms_;
    out.insert(out.end(), b.terms_.begin(), b.terms_.end());
    return {std::move(out), a.variant_};
}

DifferenceOperator operator*(cplx c, const DifferenceOperator& a) {
    std::vector<DifferenceOperator::Term> out;
    for (const auto& t : a.terms_) out.push_back({[c, f = t.coeff](cplx z) { return c * f(z); }, t.shift});
    return {std::move(out), a.variant_};
}

Realization realization(cplx ell, const Moduli& m, Variant v) {
    using S = Realization::Shape;
    const cplx eta = m.eta(), tau = m.tau();
    const cplx g = eta * (2.0 * ell + 1.0);
    const Regime r = m.regime();
    switch (v) {
        case Variant::Standard:
            return {S::Plain, eta, tau, g};
        case Variant::HalfShifted:
            if (r != Regime::QLess1) throw DomainError("HalfShifted generators need |q| < 1");
            return {S::Half, eta, tau, g};
        case Variant::Modified:
            if (r == Regime::QLess1) return {S::Conjugated, eta, tau, g};
            if (r == Regime::QGreater1) return {S::Inverted, eta, tau, g};
            throw DomainError("Modified generators need |q| != 1");
        case Variant::ModularPartner:
            // Same shapes with the roles of 2 eta and tau exchanged (tau and -2 eta when |q| > 1).
            if (r == Regime::QLess1) return {S::Conjugated, tau / 2.0, 2.0 * eta, g};
            if (r == Regime::QGreater1) return {S::Inverted, -tau / 2.0, -2.0 * eta, g};
            throw DomainError("ModularPartner generators need |q| != 1");
        case Variant::SecondDouble: {
            const cplx tau2 = tau / (2.0 * eta);
            if (!(tau2.imag() > 0.0)) throw DomainError("SecondDouble needs Im(tau / 2 eta) > 0");
            return {S::ConjugatedHalf, 1.0 / (4.0 * eta), tau2, g / (2.0 * eta), 2.0 * eta};
        }
    }
    throw DomainError("unknown variant");
}

DifferenceOperator make_generator(int a, cplx ell, const Moduli& m, Variant v) {
    using S = Realization::Shape;
    if (a < 0 || a > 3) throw DomainError("generator index must be 0..3");
    const Realization re = realization(ell, m, v);
    const cplx phase = (a == 2) ? I : cplx{1.0};
    const cplx lead = phase * jacobi_theta(a + 1, re.eta, re.tau);
    const double half = (re.shape == S::Half || re.shape == S::ConjugatedHalf) ? 0.5 : 0.0;
    const bool conj = re.shape == S::Conjugated || re.shape == S::ConjugatedHalf;
    const bool inv = re.shape == S::Inverted;
    const cplx ex = conj ? std::exp(-pi * I * re.eta) : inv ? std::exp(pi * I * re.eta) : cplx{1.0};
    const double dir = conj ? -1.0 : inv ? 1.0 : 0.0;  // sign of the e^{2 pi i z} factor on the forward shift

    auto plus = [=](cplx z) {
        const cplx x = z / re.z_scale;
        return ex * lead / jacobi_theta(1, 2.0 * x, re.tau) *
               jacobi_theta(a + 1, 2.0 * x - re.g + re.eta + half, re.tau) * e2pi(dir * x);
    };
    auto minus = [=](cplx z) {
        const cplx x = z / re.z_scale;
        return -ex * lead / jacobi_theta(1, 2.0 * x, re.tau) *
               jacobi_theta(a + 1, -2.0 * x - re.g + re.eta + half, re.tau) * e2pi(-dir * x);
    };
    const cplx step = re.eta * re.z_scale;
    return DifferenceOperator({{plus, step}, {minus, -step}}, v);
}

std::array<DifferenceOperator, 4> make_generators(cplx ell, const Moduli& m, Variant v) {
    return {make_generator(0, ell, m, v), make_generator(1, ell, m, v), make_generator(2, ell, m, v),
            make_generator(3, ell, m, v)};
}

StructureConstants structure_constants(cplx eta, cplx tau) {
    auto th = [&](int j, cplx x) { return jacobi_theta(j, x, tau); };
    const cplx t1 = th(1, eta), t2 = th(2, eta), t3 = th(3, eta), t4 = th(4, eta);
    if (std::abs(t2) < 1e-300 || std::abs(t3) < 1e-300 || std::abs(t4) < 1e-300)
        throw DomainError("structure constants at a theta zero");
    const cplx s1 = t1 * t1, s2 = t2 * t2, s3 = t3 * t3, s4 = t4 * t4;
    StructureConstants c;
    c.J12 = s1 * s4 / (s2 * s3);
    c.J23 = s1 * s2 / (s3 * s4);
    c.J31 = -s1 * s3 / (s2 * s4);
    c.J1 = th(2, 2.0 * eta) * th(2, 0.0) / s2;
    c.J2 = th(3, 2.0 * eta) * th(3, 0.0) / s3;
    c.J3 = th(4, 2.0 * eta) * th(4, 0.0) / s4;
    return c;
}

StructureConstants structure_constants(const Moduli& m, Variant v) {
    const Realization re = realization(0.0, m, v);
    return structure_constants(re.eta, re.tau);
}

CasimirValues casimir_values(cplx ell, const Moduli& m, Variant v) {
    using S = Realization::Shape;
    const Realization re = realization(ell, m, v);
    const int j = (re.shape == S::Half || re.shape == S::ConjugatedHalf) ? 2 : 1;
    auto th = [&](cplx x) { return jacobi_theta(j, x, re.tau); };
    const cplx k0 = th(re.g);
    return {4.0 * k0 * k0, 4.0 * th(re.g + re.eta) * th(re.g - re.eta)};
}

DifferenceOperator casimir_K0(const std::array<DifferenceOperator, 4>& s) {
    DifferenceOperator k = s[0] * s[0];
    for (int a = 1; a < 4; ++a) k = k + s[a] * s[a];
    return k;
}

DifferenceOperator casimir_K2(const std::array<DifferenceOperator, 4>& s, const StructureConstants& c) {
    return c.J1 * (s[1] * s[1]) + c.J2 * (s[2] * s[2]) + c.J3 * (s[3] * s[3]);
}

std::vector<cplx> sample_points(int n, double imag) {
    std::vector<cplx> out;
    for (int i = 1; static_cast<int>(out.size()) < n; ++i) {
        double x = 0.0, f = 1.0 / 3.0;
        for (int k = i; k > 0; k /= 3, f /= 3.0) x += f * (k % 3);
        x = std::fmod(x + 0.1234, 1.0);
        const double d = std::min({std::abs(x), std::abs(x - 0.5), std::abs(x - 1.0)});
        if (d >= 1e-2) out.emplace_back(x, imag);
    }
    return out;
}

std::vector<TestFunction> test_family(cplx tau) {
    const cplx half = tau / 2.0;
    return {
        {"1", [](cplx) { return cplx{1.0}; }},
        {"y+1/y", [](cplx z) { return 2.0 * std::cos(2.0 * pi * z); }},
        {"y^2+1/y^2", [](cplx z) { return 2.0 * std::cos(4.0 * pi * z); }},
        {"theta3", [half](cplx z) { return jacobi_theta(3, z, half); }},
        {"theta4", [half](cplx z) { return jacobi_theta(4, z, half); }},
        {"theta3*theta4", [half](cplx z) { return jacobi_theta(3, z, half) * jacobi_theta(4, z, half); }},
    };
}

double operator_residual(const DifferenceOperator& lhs, const DifferenceOperator& rhs,
                         std::span<const TestFunction> fns, std::span<const cplx> zs) {
    double worst = 0.0;
    for (const auto& tf : fns) {
        double diff = 0.0, scale = 1.0;
        for (cplx z : zs) {
            diff = std::max(diff, std::abs(lhs.apply(tf.fn, z) - rhs.apply(tf.fn, z)));
            scale = std::max({scale, lhs.magnitude(tf.fn, z), rhs.magnitude(tf.fn, z)});
        }
        worst = std::max(worst, diff / scale);
    }
    return worst;
}

double quadratic_relations_residual(cplx ell, const Moduli& m, Variant v, std::span<const TestFunction> fns,
                                    std::span<const cplx> zs) {
    const auto s = make_generators(ell, m, v);
    const StructureConstants c = structure_constants(m, v);
    const std::array<std::array<int, 3>, 3> cyc{{{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}};
    const std::array<cplx, 3> jbg{c.J23, c.J31, c.J12};
    double worst = 0.0;
    for (int r = 0; r < 3; ++r) {
        const auto [al, be, ga] = cyc[r];
        const DifferenceOperator lhs1 = s[al] * s[be] + (-1.0) * (s[be] * s[al]);
        const DifferenceOperator rhs1 = I * (s[0] * s[ga] + s[ga] * s[0]);
        const DifferenceOperator lhs2 = s[0] * s[al] + (-1.0) * (s[al] * s[0]);
        const DifferenceOperator rhs2 = (I * jbg[r]) * (s[be] * s[ga] + s[ga] * s[be]);
        worst = std::max({worst, operator_residual(lhs1, rhs1, fns, zs), operator_residual(lhs2, rhs2, fns, zs)});
    }
    return worst;
}

namespace {

DifferenceOperator scalar_operator(cplx c, Variant v) {
    return DifferenceOperator({{[c](cplx) { return c; }, 0.0}}, v);
}

}  // namespace

double casimir_check(cplx ell, const Moduli& m, Variant v, std::span<const TestFunction> fns,
                     std::span<const cplx> zs) {
    const auto s = make_generators(ell, m, v);
    const CasimirValues k = casimir_values(ell, m, v);
    return std::max(operator_residual(casimir_K0(s), scalar_operator(k.K0, v), fns, zs),
                    operator_residual(casimir_K2(s, structure_constants(m, v)), scalar_operator(k.K2, v), fns, zs));
}

double casimir_commutation_check(cplx ell, const Moduli& m, Variant v, std::span<const TestFunction> fns,
                                 std::span<const cplx> zs) {
    const auto s = make_generators(ell, m, v);
    const DifferenceOperator k0 = casimir_K0(s);
    const DifferenceOperator k2 = casimir_K2(s, structure_constants(m, v));
    double worst = 0.0;
    for (const auto& g : s)
        worst = std::max({worst, operator_residual(k0 * g, g * k0, fns, zs), operator_residual(k2 * g, g * k2, fns, zs)});
    return worst;
}

OperatorMatrix L_operator(const SiteParams& site, const Moduli& m, Variant v) {
    const Realization re = realization(site.ell, m, v);
    const auto s = make_generators(site.ell, m, v);
    const cplx u = site.u / re.z_scale;
    std::array<cplx, 4> w;
    for (int a = 0; a < 4; ++a)
        w[a] = jacobi_theta(a + 1, u + re.eta, re.tau) / jacobi_theta(a + 1, re.eta, re.tau);
    OperatorMatrix L;
    L[0][0] = w[0] * s[0] + w[3] * s[3];
    L[0][1] = w[1] * s[1] + (-I * w[2]) * s[2];
    L[1][0] = w[1] * s[1] + (I * w[2]) * s[2];
    L[1][1] = w[0] * s[0] + (-w[3]) * s[3];
    return L;
}

Eigen::Matrix2cd M_matrix(cplx a, cplx b, cplx tau) {
    const cplx h = tau / 2.0;
    Eigen::Matrix2cd M;
    M << jacobi_theta(3, a, h), -jacobi_theta(3, b, h), -jacobi_theta(4, a, h), jacobi_theta(4, b, h);
    return M;
}

Eigen::Matrix2cd N_matrix(cplx a, cplx b, cplx tau) {
    const cplx h = tau / 2.0;
    Eigen::Matrix2cd N;
    N << jacobi_theta(4, b, h), jacobi_theta(3, b, h), jacobi_theta(4, a, h), jacobi_theta(3, a, h);
    return N;
}

Eigen::Matrix2cd NM_product_closed(cplx a1, cplx b1, cplx a2, cplx b2, cplx tau) {
    auto t = [&](cplx x, cplx y) { return jacobi_theta(1, x - y, tau) * jacobi_theta(1, x + y, tau); };
    Eigen::Matrix2cd R;
    R << t(b1, a2), -t(b1, b2), t(a1, a2), -t(a1, b2);
    return 2.0 * R;
}

Eigen::Matrix2cd NsM_product_closed(cplx a1, cplx b1, cplx a2, cplx b2, cplx tau) {
    auto t = [&](cplx x, cplx y) { return jacobi_theta(4, x - y, tau) * jacobi_theta(4, x + y, tau); };
    Eigen::Matrix2cd R;
    R << t(b1, a2), -t(b1, b2), t(a1, a2), -t(a1, b2);
    return 2.0 * R;
}

OperatorMatrix L_factorized(const SiteParams& site, const Moduli& m, Variant v) {
    if (v != Variant::Standard && v != Variant::HalfShifted)
        throw DomainError("factorized L is available for Standard and HalfShifted generators");
    if (v == Variant::HalfShifted && m.regime() != Regime::QLess1)
        throw DomainError("HalfShifted generators need |q| < 1");
    const cplx eta = m.eta(), tau = m.tau();
    const double quarter = (v == Variant::HalfShifted) ? 0.25 : 0.0;
    const cplx u1 = site.u1(eta) - quarter, u2 = site.u2(eta) + quarter;
    OperatorMatrix L;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            std::vector<DifferenceOperator::Term> terms;
            for (int j = 0; j < 2; ++j) {
                const cplx shift = (j == 0) ? eta : -eta;
                terms.push_back({[=](cplx z) {
                                     const cplx zs = z + shift;
                                     return M_matrix(z - u1, z + u1, tau)(i, j) * N_matrix(zs - u2, zs + u2, tau)(j, k) /
                                            jacobi_theta(1, 2.0 * z, tau);
                                 },
                                 shift});
            }
            L[i][k] = DifferenceOperator(std::move(terms), v);
        }
    return L;
}

Eigen::Matrix2cd pauli(int a) {
    Eigen::Matrix2cd s;
    switch (a) {
        case 0: s << 1, 0, 0, 1; break;
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, -I, I, 0; break;
        case 3: s << 1, 0, 0, -1; break;
        default: throw DomainError("Pauli index must be 0..3");
    }
    return s;
}

Eigen::Matrix4cd baxter_R(cplx u, cplx eta, cplx tau) {
    Eigen::Matrix4cd R = Eigen::Matrix4cd::Zero();
    for (int a = 0; a < 4; ++a) {
        const cplx w = jacobi_theta(a + 1, u + eta, tau) / jacobi_theta(a + 1, eta, tau);
        const Eigen::Matrix2cd s = pauli(a);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) R.block<2, 2>(2 * i, 2 * j) += w * s(i, j) * s;
    }
    return R;
}

BasisMatrix spin_half_matrix(const DifferenceOperator& op, cplx tau) {
    const cplx h = tau / 2.0;
    const std::array<ZFn, 2> basis{[h](cplx z) { return jacobi_theta(4, z, h); },
                                   [h](cplx z) { return jacobi_theta(3, z, h); }};
    const auto zs = sample_points(8, 0.013);
    Eigen::MatrixXcd A(zs.size(), 2), B(zs.size(), 2);
    for (std::size_t r = 0; r < zs.size(); ++r)
        for (int j = 0; j < 2; ++j) {
            A(r, j) = basis[j](zs[r]);
            B(r, j) = op.apply(basis[j], zs[r]);
        }
    const Eigen::MatrixXcd X = A.colPivHouseholderQr().solve(B);
    const double scale = std::max(1.0, B.cwiseAbs().maxCoeff());
    return {X, (A * X - B).cwiseAbs().maxCoeff() / scale};
}

}  // namespace ellint
