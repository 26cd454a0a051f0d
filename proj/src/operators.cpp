#include "ellint/operators.hpp"

#include <array>
#include <cmath>

#include "ellint/parallel.hpp"
#include "ellint/sklyanin.hpp"
#include "ellint/special_fn.hpp"

namespace ellint {

namespace {

constexpr double kExceptionalGuard = 1e-6;
constexpr double kLimitTolerance = 1e-14;

cplx gamma_pm4(cplx t, cplx a, cplx b, cplx p, cplx q) {
    return elliptic_gamma(t * a * b, p, q) * elliptic_gamma(t * a / b, p, q) * elliptic_gamma(t * b / a, p, q) *
           elliptic_gamma(t / (a * b), p, q);
}

bool half_integer(double x) {
    const double twice = 2.0 * x;
    return std::abs(twice - std::round(twice)) < 1e-12;
}

}  // namespace

std::string to_string(KernelVariant v) {
    switch (v) {
        case KernelVariant::QLess1: return "QLess1";
        case KernelVariant::QGreater1: return "QGreater1";
        case KernelVariant::HalfShifted: return "HalfShifted";
    }
    return "?";
}

KernelSet::KernelSet(const Moduli& m, KernelVariant v)
    : KernelSet(m.p(), m.q_inside(), v == KernelVariant::HalfShifted ? -m.sqrt_pq() : m.sqrt_pq(), v) {
    const bool inverted = m.regime() == Regime::QGreater1;
    if (inverted != (v == KernelVariant::QGreater1))
        throw DomainError("kernel variant " + to_string(v) + " does not match regime " + to_string(m.regime()));
}

KernelSet::KernelSet(cplx p, cplx q, cplx root, KernelVariant v)
    : p_(p), q_(q), root_(root), variant_(v), kappa_(qpochhammer(p, p) * qpochhammer(q, q) / 2.0) {
    if (std::abs(p) >= 1.0 - kBaseMargin || std::abs(q) >= 1.0 - kBaseMargin)
        throw DomainError("kernel bases must lie inside the unit disc");
}

cplx KernelSet::gamma(cplx t) const { return elliptic_gamma(t, p_, q_); }

cplx KernelSet::s1_parameter(cplx a) const { return variant_ == KernelVariant::QGreater1 ? e2pi(a) : e2pi(-a); }

cplx KernelSet::s2_parameter(cplx a) const {
    return root_ * (variant_ == KernelVariant::QGreater1 ? e2pi(-a) : e2pi(a));
}

cplx KernelSet::s2_weight(cplx a, cplx y1, cplx y2) const { return s2_weight_r(s2_parameter(a), y1, y2); }

cplx KernelSet::s2_weight_r(cplx r, cplx y1, cplx y2) const { return gamma_pm4(r, y1, y2, p_, q_); }

cplx KernelSet::s1_kernel(cplx t, cplx y, cplx x) const {
    // 1 / Gamma(x^2) Gamma(x^-2) = theta(x^2; p) theta(x^-2; q)
    return gamma_pm4(t, y, x, p_, q_) * theta_mult(x * x, p_) * theta_mult(1.0 / (x * x), q_);
}

std::optional<int> KernelSet::s1_limit(cplx t) const {
    if (std::abs(t - 1.0) < kLimitTolerance) return 1;
    if (std::abs(t + 1.0) < kLimitTolerance) return -1;
    return std::nullopt;
}

cplx KernelSet::s1_norm(cplx t) const {
    const cplx t2 = t * t;
    cplx pj = 1.0;
    for (int j = 0; std::abs(pj) > 1e-12; ++j, pj *= p_) {
        cplx pq = pj;
        for (int k = 0; std::abs(pq) > 1e-12; ++k, pq *= q_)
            if (std::abs(t2 * pq - 1.0) < kExceptionalGuard)
                throw ExceptionalParameter("t^2 within 1e-6 of p^-" + std::to_string(j) + " q^-" + std::to_string(k));
    }
    return kappa_ / gamma(t2);
}

TorusGrid TorusGrid::sample(int n, const Fn1& f) {
    TorusGrid g{n, 1, {}};
    for (cplx y : circle_nodes(n)) g.values.push_back(f(y));
    return g;
}

TorusGrid TorusGrid::sample(int n, const Fn2& f) {
    TorusGrid g{n, 2, std::vector<cplx>(static_cast<std::size_t>(n) * n)};
    const auto y = circle_nodes(n);
    parallel_for(g.values.size(), [&](std::size_t i) { g.values[i] = f(y[i / n], y[i % n]); });
    return g;
}

TorusGrid TorusGrid::sample(int n, const Fn3& f) {
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    TorusGrid g{n, 3, std::vector<cplx>(nn * n)};
    const auto y = circle_nodes(n);
    parallel_for(g.values.size(), [&](std::size_t i) { g.values[i] = f(y[i / nn], y[(i / n) % n], y[i % n]); });
    return g;
}

std::size_t TorusGrid::stride(int axis) const {
    if (axis < 0 || axis >= dims) throw ArityError("grid axis out of range");
    std::size_t s = 1;
    for (int d = axis + 1; d < dims; ++d) s *= static_cast<std::size_t>(n);
    return s;
}

cplx& TorusGrid::at(std::span<const int> idx) {
    if (static_cast<int>(idx.size()) != dims) throw ArityError("grid index arity");
    std::size_t flat = 0;
    for (int i : idx) flat = flat * n + static_cast<std::size_t>(i);
    return values.at(flat);
}

double TorusGrid::symmetry_defect(int axis) const {
    const std::size_t s = stride(axis);
    double defect = 0, scale = 1;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const int j = static_cast<int>((i / s) % n);
        const std::size_t mirror = i + (static_cast<long>(reflect(j)) - j) * static_cast<long>(s);
        defect = std::max(defect, std::abs(values[i] - values[mirror]));
        scale = std::max(scale, std::abs(values[i]));
    }
    return defect / scale;
}

Eigen::MatrixXcd s1_matrix(const KernelSet& k, cplx a, int n) { return s1_matrix_t(k, k.s1_parameter(a), n); }

Eigen::MatrixXcd s1_matrix_t(const KernelSet& k, cplx t, int n) {
    if (auto sign = k.s1_limit(t)) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
        // y -> -y maps node j to node j + n/2 on the half-offset grid.
        for (int i = 0; i < n; ++i) m(i, *sign > 0 ? i : (i + n / 2) % n) = 1.0;
        return m;
    }
    const cplx norm = k.s1_norm(t) / static_cast<double>(n);
    const auto y = circle_nodes(n);
    Eigen::MatrixXcd m(n, n);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        for (int j = 0; j < n; ++j) m(i, j) = norm * k.s1_kernel(t, y[i], y[j]);
    });
    return m;
}

Eigen::MatrixXcd s2_matrix(const KernelSet& k, cplx a, int n) {
    const auto y = circle_nodes(n);
    Eigen::MatrixXcd w(n, n);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        for (int j = 0; j < n; ++j) w(i, j) = k.s2_weight(a, y[i], y[j]);
    });
    return w;
}

void apply_along(TorusGrid& g, int axis, const Eigen::MatrixXcd& m) {
    const std::size_t s = g.stride(axis), n = static_cast<std::size_t>(g.n);
    if (m.rows() != g.n || m.cols() != g.n) throw ArityError("operator matrix does not match grid");
    parallel_for(g.size() / n, [&](std::size_t line) {
        const std::size_t base = (line / s) * s * n + line % s;
        Eigen::VectorXcd v(g.n);
        for (std::size_t j = 0; j < n; ++j) v(j) = g.values[base + j * s];
        const Eigen::VectorXcd out = m * v;
        for (std::size_t j = 0; j < n; ++j) g.values[base + j * s] = out(j);
    });
}

void multiply_pair(TorusGrid& g, int axis1, int axis2, const Eigen::MatrixXcd& w) {
    const std::size_t s1 = g.stride(axis1), s2 = g.stride(axis2);
    for (std::size_t i = 0; i < g.size(); ++i) g.values[i] *= w((i / s1) % g.n, (i / s2) % g.n);
}

void swap_axes(TorusGrid& g, int axis1, int axis2) {
    if (axis1 == axis2) return;
    const std::size_t s1 = g.stride(axis1), s2 = g.stride(axis2), n = static_cast<std::size_t>(g.n);
    std::vector<cplx> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const std::size_t i1 = (i / s1) % n, i2 = (i / s2) % n;
        out[i - i1 * s1 - i2 * s2 + i2 * s1 + i1 * s2] = g.values[i];
    }
    g.values = std::move(out);
}

cplx s1_at(const KernelSet& k, cplx a, std::span<const cplx> f_nodes, cplx y) {
    const cplx t = k.s1_parameter(a);
    if (k.s1_limit(t)) throw ExceptionalParameter("limit of S1 needs pointwise values of f");
    const int n = static_cast<int>(f_nodes.size());
    const auto x = circle_nodes(n);
    cplx sum = 0;
    for (int j = 0; j < n; ++j) sum += k.s1_kernel(t, y, x[j]) * f_nodes[j];
    return k.s1_norm(t) * sum / static_cast<double>(n);
}

cplx bailey_M(const KernelSet& k, cplx t, const Fn1& f, cplx w, int n) {
    const cplx p = k.p(), q = k.q();
    const auto x = circle_nodes(n);
    cplx sum = 0;
    for (cplx xj : x)
        sum += gamma_pm4(t, w, xj, p, q) / (elliptic_gamma(xj * xj, p, q) * elliptic_gamma(1.0 / (xj * xj), p, q)) *
               f(xj);
    return k.kappa() / elliptic_gamma(t * t, p, q) * sum / static_cast<double>(n);
}

cplx bailey_D(const KernelSet& k, cplx s, cplx y, cplx w) { return k.s2_weight_r(k.root() / s, y, w); }

ROperator::ROperator(KernelSet k, RParams r, int n) : k_(std::move(k)), r_(r), n_(n) {}

void ROperator::apply_grid(TorusGrid& g, int axis1, int axis2) const {
    multiply_pair(g, axis1, axis2, s2_matrix(k_, r_.u2 - r_.v1, n_));
    apply_along(g, axis2, s1_matrix(k_, r_.u2 - r_.v2, n_));
    apply_along(g, axis1, s1_matrix(k_, r_.u1 - r_.v1, n_));
    multiply_pair(g, axis1, axis2, s2_matrix(k_, r_.u1 - r_.v2, n_));
}

ROperator::Action ROperator::prepare(const Fn2& f) const {
    Action act;
    act.op_ = this;
    act.f_ = f;
    act.inner_.resize(n_, n_);
    const auto x = circle_nodes(n_);
    const cplx c = r_.u2 - r_.v1;
    parallel_for(static_cast<std::size_t>(n_) * n_, [&](std::size_t i) {
        const cplx x1 = x[i / n_], x2 = x[i % n_];
        act.inner_(i / n_, i % n_) = k_.s2_weight(c, x1, x2) * f(x1, x2);
    });
    return act;
}

cplx ROperator::Action::operator()(cplx y1, cplx y2) const {
    const KernelSet& k = op_->k_;
    const RParams& r = op_->r_;
    const int n = op_->n_;
    const auto x = circle_nodes(n);
    const cplx c = r.u2 - r.v1;
    auto h = [&](cplx a, cplx b) { return k.s2_weight(c, a, b) * f_(a, b); };
    // S1 row at y, or the limit point +-y when the transform degenerates to identity/parity.
    auto row = [&](cplx a, cplx y) -> std::pair<Eigen::VectorXcd, std::optional<cplx>> {
        const cplx t = k.s1_parameter(a);
        if (auto sign = k.s1_limit(t)) return {{}, static_cast<double>(*sign) * y};
        const cplx norm = k.s1_norm(t) / static_cast<double>(n);
        Eigen::VectorXcd v(n);
        for (int j = 0; j < n; ++j) v(j) = norm * k.s1_kernel(t, y, x[j]);
        return {v, std::nullopt};
    };
    const auto [first, at1] = row(r.u1 - r.v1, y1);
    const auto [second, at2] = row(r.u2 - r.v2, y2);
    cplx core;
    if (at1 && at2) {
        core = h(*at1, *at2);
    } else if (at1) {
        for (int j = 0; j < n; ++j) core += h(*at1, x[j]) * second(j);
    } else if (at2) {
        for (int j = 0; j < n; ++j) core += first(j) * h(x[j], *at2);
    } else {
        core = (first.transpose() * inner_ * second)(0, 0);
    }
    return k.s2_weight(r.u1 - r.v2, y1, y2) * core;
}

cplx R_direct(const KernelSet& k, const RParams& r, const Fn2& f, cplx z1, cplx z2, int n) {
    const cplx p = k.p(), q = k.q(), root = k.root();
    const double dir = k.variant() == KernelVariant::QGreater1 ? -1.0 : 1.0;
    const cplx a = e2pi(dir * (r.v1 - r.u1)), b = e2pi(dir * (r.v2 - r.u2));
    const cplx outer = root * e2pi(dir * (r.u1 - r.v2)), inner = root * e2pi(dir * (r.u2 - r.v1));
    const cplx kappa = qpochhammer(p, p) * qpochhammer(q, q) / 2.0;
    const auto nodes = circle_nodes(n);
    cplx sum = 0;
    for (cplx x : nodes) {
        const cplx wx = gamma_pm4(a, z2, x, p, q) / (elliptic_gamma(x * x, p, q) * elliptic_gamma(1.0 / (x * x), p, q));
        for (cplx y : nodes) {
            const cplx wy =
                gamma_pm4(b, z1, y, p, q) / (elliptic_gamma(y * y, p, q) * elliptic_gamma(1.0 / (y * y), p, q));
            sum += wx * wy * gamma_pm4(inner, x, y, p, q) * f(x, y);
        }
    }
    return kappa * kappa * gamma_pm4(outer, z1, z2, p, q) /
           (elliptic_gamma(a * a, p, q) * elliptic_gamma(b * b, p, q)) * sum / static_cast<double>(n * n);
}

DiscreteSum B_discrete_sum(const Moduli& m, double lq, double lp, int sign, const Fn1& f, cplx w) {
    if (!half_integer(lq) || !half_integer(lp) || lq < -0.5 || lp < -0.5)
        throw DomainError("spins of the terminating operator must be half-integers >= -1/2");
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
    const cplx p = m.p(), q = m.q_inside();
    const cplx eta = m.regime() == Regime::QGreater1 ? -m.eta() : m.eta();
    const cplx t = static_cast<double>(sign) * e2pi(2.0 * eta * (-lq - 0.5)) * e2pi(m.tau() * (-lp - 0.5));
    const int nq = static_cast<int>(std::lround(2 * lq + 1)), np = static_cast<int>(std::lround(2 * lp + 1));
    if (nq == 0 && np == 0) {
        const cplx v = f(t * w);
        return {v, std::abs(v)};
    }

    const cplx tw2 = t * t * w * w;
    // One-base factor of the double residue sum: prod over b < k of the theta ratios.
    auto factor = [&](int k, cplx base, cplx other) {
        cplx v = theta_mult(tw2 * ipow(base, 2 * k), other) / theta_mult(tw2, other);
        for (int b = 0; b < k; ++b)
            v *= theta_mult(t * t * ipow(base, b), other) * theta_mult(tw2 * ipow(base, b), other) /
                 (theta_mult(ipow(base, b + 1), other) * theta_mult(w * w * ipow(base, b + 1), other));
        return v;
    };
    const cplx pre = elliptic_gamma(1.0 / (w * w), p, q) / elliptic_gamma(1.0 / (tw2), p, q);
    cplx total = 0;
    double magnitude = 0;
    for (int k = 0; k <= nq; ++k) {
        const cplx a = factor(k, q, p);
        for (int j = 0; j <= np; ++j) {
            const cplx b = factor(j, p, q);
            const cplx den = ipow(t, 4 * (j * k + j + k)) * ipow(w, 2 * (j + k)) * ipow(p, 2 * j * k + j * j) *
                             ipow(q, 2 * j * k + k * k);
            const cplx term = pre * a * b * f(t * ipow(q, k) * ipow(p, j) * w) / den;
            total += term;
            magnitude += std::abs(term);
        }
    }
    return {total, magnitude};
}

cplx B_discrete(const Moduli& m, double lq, double lp, int sign, const Fn1& f, cplx w) {
    return B_discrete_sum(m, lq, lp, sign, f, w).value;
}

std::vector<AnnulusEvaluator> theta_plus_basis(double ell, ThetaBase base, const Moduli& m) {
    if (!half_integer(ell) || ell < 0) throw DomainError("theta+ order needs a half-integer l >= 0");
    const int degree = static_cast<int>(std::lround(2 * ell));
    const cplx tau_b =
        base == ThetaBase::P ? m.tau() : 2.0 * (m.regime() == Regime::QGreater1 ? -m.eta() : m.eta());
    const cplx b = e2pi(tau_b);
    std::vector<AnnulusEvaluator> out;
    for (int k = 0; k <= degree; ++k) {
        auto fn = [tau_b, degree, k](cplx y) {
            const cplx z = log2pi(y);
            return ipow(jacobi_theta(4, z, tau_b / 2.0), degree - k) * ipow(jacobi_theta(3, z, tau_b / 2.0), k);
        };
        const std::array<cplx, 4> probes{cplx{0.83, 0.21}, cplx{-0.4, 1.1}, cplx{1.3, -0.5}, cplx{0.2, -0.7}};
        for (cplx y : probes) {
            const cplx fy = fn(y);
            const double scale = std::max(1.0, std::abs(fy));
            const double reflect = std::abs(fn(1.0 / y) - fy) / scale;
            const double shift = std::abs(fn(b * y) - ipow(b * y * y, -degree) * fy) / scale;
            if (reflect > 1e-10 || shift > 1e-10)
                throw BasisValidationError("theta+ candidate " + std::to_string(k) + " of order " +
                                           std::to_string(2 * degree) + " fails its defining relations");
        }
        out.push_back({fn, Annulus{0.0, std::numeric_limits<double>::infinity()}, true});
    }
    return out;
}

std::optional<double> zero_mode_check(const Moduli& m, double lq, double lp, int i, int j) {
    if (lq < 0 && lp < 0) return std::nullopt;
    Fn1 f;
    if (lp < 0) {
        const auto num = theta_plus_basis(lq, ThetaBase::P, m).at(i);
        const auto den = theta_plus_basis(0.5, ThetaBase::Q, m).at(j);
        f = [num, den](cplx y) { return num(y) / den(y); };
    } else if (lq < 0) {
        const auto num = theta_plus_basis(lp, ThetaBase::Q, m).at(j);
        const auto den = theta_plus_basis(0.5, ThetaBase::P, m).at(i);
        f = [num, den](cplx y) { return num(y) / den(y); };
    } else {
        const auto a = theta_plus_basis(lq, ThetaBase::P, m).at(i);
        const auto b = theta_plus_basis(lp, ThetaBase::Q, m).at(j);
        f = [a, b](cplx y) { return a(y) * b(y); };
    }
    double worst = 0, scale = 0;
    for (cplx z : sample_points(20, 0.01)) {
        const cplx w = e2pi(z);
        const auto sum = B_discrete_sum(m, lq, lp, 1, f, w);
        worst = std::max(worst, std::abs(sum.value));
        scale = std::max({scale, std::abs(f(w)), sum.magnitude});
    }
    return worst / std::max(1.0, scale);
}

cplx s1_on_gamma_pair(const KernelSet& k, cplx t, cplx t1, cplx t2, cplx w, int n) {
    const cplx p = k.p(), q = k.q();
    auto integrand = [&](cplx z) {
        return k.s1_kernel(t, w, z) * elliptic_gamma(t1 * z, p, q) * elliptic_gamma(t1 / z, p, q) *
               elliptic_gamma(t2 * z, p, q) * elliptic_gamma(t2 / z, p, q);
    };
    PoleList corrections;
    for (cplx c : {t1, t2}) {
        cplx pj = 1.0;
        for (int j = 0; std::abs(c * pj) > 1.0; ++j, pj *= p) {
            cplx pq = pj;
            for (int kk = 0; std::abs(c * pq) > 1.0; ++kk, pq *= q) {
                const cplx z0 = c * pq;
                // The pole of Gamma(c/z) at z0 has residue R_jk times the remaining factors.
                const cplx rest = k.s1_kernel(t, w, z0) * elliptic_gamma(c * z0, p, q) *
                                  (c == t1 ? elliptic_gamma(t2 * z0, p, q) * elliptic_gamma(t2 / z0, p, q)
                                           : elliptic_gamma(t1 * z0, p, q) * elliptic_gamma(t1 / z0, p, q));
                const cplx res = gamma_residue_factor(j, kk, p, q) * rest;
                corrections.push_back({z0, 1, res});
                corrections.push_back({1.0 / z0, 1, -res});
            }
        }
    }
    return k.s1_norm(t) * residue_corrected_integral(integrand, n, corrections);
}

std::vector<cplx> inversion_values(const KernelSet& k, cplx t, const Fn1& f, std::span<const cplx> xs, int n,
                                   std::optional<cplx> inner_t) {
    const cplx p = k.p(), q = k.q(), ti = 1.0 / inner_t.value_or(t);
    const auto nodes = circle_nodes(n);
    const cplx inner_norm = k.s1_norm(ti);

    // Inner contour: the unit circle pushed out around t^{-1} w^{+-1} p^j q^k (and in around the reciprocals).
    auto inner = [&](cplx w) {
        PoleList corrections;
        for (cplx c : {ti * w, ti / w}) {
            const cplx other = c == ti * w ? ti / w : ti * w;
            cplx pj = 1.0;
            for (int j = 0; std::abs(c * pj) > 1.0; ++j, pj *= p) {
                cplx pq = pj;
                for (int kk = 0; std::abs(c * pq) > 1.0; ++kk, pq *= q) {
                    const cplx z0 = c * pq;
                    const cplx rest = elliptic_gamma(c * z0, p, q) * elliptic_gamma(other * z0, p, q) *
                                      elliptic_gamma(other / z0, p, q) * theta_mult(z0 * z0, p) *
                                      theta_mult(1.0 / (z0 * z0), q) * f(z0);
                    const cplx res = gamma_residue_factor(j, kk, p, q) * rest;
                    corrections.push_back({z0, 1, res});
                    corrections.push_back({1.0 / z0, 1, -res});
                }
            }
        }
        return inner_norm *
               residue_corrected_integral([&](cplx z) { return k.s1_kernel(ti, w, z) * f(z); }, n, corrections);
    };

    std::vector<cplx> iw(nodes.size());
    parallel_for(nodes.size(), [&](std::size_t i) { iw[i] = inner(nodes[i]); });
    const cplx outer_norm = k.s1_norm(t) / static_cast<double>(n);
    std::vector<cplx> out;
    for (cplx x : xs) {
        cplx sum = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += k.s1_kernel(t, x, nodes[i]) * iw[i];
        out.push_back(outer_norm * sum);
    }
    return out;
}

}  // namespace ellint
