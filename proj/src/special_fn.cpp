#include "ellint/special_fn.hpp"

#include <algorithm>
#include <cmath>

namespace ellint {

namespace {

void require_base(cplx b, const char* name) {
    if (std::abs(std::abs(b) - 1.0) < kBaseMargin)
        throw DomainError(std::string("base ") + name + " too close to the unit circle");
}

// Running product that folds into a logarithm every few factors so that long
// products of moderately sized factors never overflow.
class LogProduct {
public:
    void mul(cplx f) {
        acc_ *= f;
        if (++count_ % 32 == 0) flush();
    }
    cplx value() {
        flush();
        return std::exp(log_);
    }

private:
    void flush() {
        if (acc_ != 1.0) log_ += std::log(acc_);
        acc_ = 1.0;
    }
    cplx acc_{1.0};
    cplx log_{0.0};
    long count_ = 0;
};

}  // namespace

cplx ipow(cplx base, long n) {
    if (n < 0) return 1.0 / ipow(base, -n);
    cplx r = 1.0;
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

cplx qpochhammer(cplx x, cplx q) {
    if (std::abs(q) >= 1.0 - kBaseMargin) throw DomainError("qpochhammer needs |q| < 1");
    if (x == 0.0) return 1.0;
    cplx r = 1.0;
    cplx qk_x = x;
    for (int k = 0; k < 200000; ++k) {
        r *= 1.0 - qk_x;
        if (r == 0.0) return 0.0;
        qk_x *= q;
        if (std::abs(qk_x) < kTruncation) break;
    }
    return r;
}

cplx theta_mult(cplx t, cplx p) {
    if (t == 0.0) throw DomainError("theta_mult at t = 0");
    if (p == 0.0) return 1.0 - t;
    require_base(p, "p");
    if (std::abs(p) > 1.0) return 1.0 / theta_mult(1.0 / t, 1.0 / p);
    return qpochhammer(t, p) * qpochhammer(p / t, p);
}

cplx jacobi_theta(int j, cplx z, cplx tau) {
    if (j < 1 || j > 4) throw DomainError("theta index must be 1..4");
    if (!(tau.imag() > 0.0)) throw DomainError("Im(tau) must be positive");
    const double half = (j <= 2) ? 0.5 : 0.0;
    const cplx arg = (j == 1 || j == 4) ? z + 0.5 : z;
    auto term = [&](long n) {
        const double m = double(n) + half;
        return std::exp(pi * I * (m * m * tau + 2.0 * m * arg));
    };
    // Terms peak near n = -Im(arg)/Im(tau); sum outward from there.
    const long n0 = std::lround(-arg.imag() / tau.imag() - half);
    cplx sum = term(n0);
    double biggest = std::abs(sum);
    for (int dir : {1, -1}) {
        int small_run = 0;
        for (long n = n0 + dir; small_run < 3; n += dir) {
            const cplx t = term(n);
            sum += t;
            const double a = std::abs(t);
            biggest = std::max(biggest, a);
            small_run = (a < 1e-18 * biggest) ? small_run + 1 : 0;
        }
    }
    return j == 1 ? -sum : sum;
}

cplx elliptic_gamma(cplx t, cplx p, cplx q) {
    if (t == 0.0) throw DomainError("elliptic_gamma at t = 0");
    if (p != 0.0) require_base(p, "p");
    if (q != 0.0) require_base(q, "q");
    if (std::abs(q) > 1.0) return 1.0 / elliptic_gamma(t / q, p, 1.0 / q);
    if (std::abs(p) > 1.0) return 1.0 / elliptic_gamma(t / p, 1.0 / p, q);

    const cplx s = p * q / t;
    const double reach = std::max(std::abs(t), std::abs(s));
    LogProduct prod;
    cplx pj = 1.0;
    for (int j = 0; reach * std::abs(pj) >= kTruncation; ++j) {
        cplx pjqk = pj;
        for (int k = 0; reach * std::abs(pjqk) >= kTruncation; ++k) {
            const cplx den = 1.0 - t * pjqk;
            if (std::abs(den) < kPoleGuard * std::abs(pjqk))
                throw PoleProximity("elliptic_gamma argument on the pole lattice");
            const cplx num = 1.0 - s * pjqk;
            if (num == 0.0) return 0.0;
            prod.mul(num / den);
            pjqk *= q;
            if (q == 0.0) break;
        }
        pj *= p;
        if (p == 0.0) break;
    }
    return prod.value();
}

cplx gamma_residue_factor(int j, int k, cplx p, cplx q) {
    if (j < 0 || k < 0) throw DomainError("residue indices must be non-negative");
    const double sign = ((j * k + j + k) % 2 == 0) ? 1.0 : -1.0;
    cplx num = sign * ipow(q, long(j + 1) * k * (k + 1) / 2) * ipow(p, long(k + 1) * j * (j + 1) / 2);
    cplx den = qpochhammer(p, p) * qpochhammer(q, q);
    cplx qb = 1.0;
    for (int b = 1; b <= k; ++b) {
        qb *= q;
        den *= theta_mult(qb, p);
    }
    cplx pa = 1.0;
    for (int a = 1; a <= j; ++a) {
        pa *= p;
        den *= theta_mult(pa, q);
    }
    return num / den;
}

cplx bernoulli_B33(cplx u, const QuasiPeriods& w) {
    if (w.w1 == 0.0 || w.w2 == 0.0 || w.w3 == 0.0) throw DomainError("zero quasi-period");
    const cplx x = u - 0.5 * w.sum();
    const cplx sq = w.w1 * w.w1 + w.w2 * w.w2 + w.w3 * w.w3;
    return x * (x * x - 0.25 * sq) / (w.w1 * w.w2 * w.w3);
}

cplx bernoulli_B22(cplx u, cplx w1, cplx w2) {
    if (w1 == 0.0 || w2 == 0.0) throw DomainError("zero quasi-period");
    return u * u / (w1 * w2) - u / w1 - u / w2 + w1 / (6.0 * w2) + w2 / (6.0 * w1) + 0.5;
}

cplx modified_gamma_G(cplx u, const QuasiPeriods& w, GForm form) {
    if (form == GForm::Product) {
        return elliptic_gamma(e2pi(u / w.w2), w.p(), w.q()) /
               elliptic_gamma(w.q_mod() * e2pi(u / w.w1), w.q_mod(), w.r());
    }
    return std::exp(-pi * I / 3.0 * bernoulli_B33(u, w)) *
           elliptic_gamma(e2pi(-u / w.w3), w.r_mod(), w.p_mod());
}

double theta_modular_check(cplx u, cplx w1, cplx w2) {
    const cplx lhs = theta_mult(e2pi(-u / w1), e2pi(-w2 / w1));
    const cplx rhs = std::exp(pi * I * bernoulli_B22(u, w1, w2)) * theta_mult(e2pi(u / w2), e2pi(w1 / w2));
    return std::abs(lhs - rhs) / std::abs(rhs);
}

double theta_duplication_check(cplx x, cplx tau) {
    const cplx p = e2pi(tau);
    const cplx lhs = jacobi_theta(1, 2.0 * x, 2.0 * tau);
    const cplx rhs = qpochhammer(-p, p) / qpochhammer(p, p) * jacobi_theta(1, x, tau) * jacobi_theta(2, x, tau);
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

std::string to_string(ThetaAddition id) {
    switch (id) {
        case ThetaAddition::Theta1: return "theta1_pair";
        case ThetaAddition::Theta2: return "theta2_pair";
        case ThetaAddition::Theta3: return "theta3_pair";
        case ThetaAddition::Theta4: return "theta4_pair";
        case ThetaAddition::Mixed41: return "theta4_theta1_pair";
        case ThetaAddition::Barred12: return "barred_theta1_theta2";
    }
    return "?";
}

double theta_addition_check(ThetaAddition id, cplx x, cplx y, cplx tau) {
    auto th = [tau](int j, cplx z) { return jacobi_theta(j, z, tau); };
    auto bar = [tau](int j, cplx z) { return jacobi_theta(j, z, tau / 2.0); };
    cplx lhs, rhs;
    switch (id) {
        case ThetaAddition::Theta1:
            lhs = 2.0 * th(1, x + y) * th(1, x - y);
            rhs = bar(4, x) * bar(3, y) - bar(4, y) * bar(3, x);
            break;
        case ThetaAddition::Theta2:
            lhs = 2.0 * th(2, x + y) * th(2, x - y);
            rhs = bar(3, x) * bar(3, y) - bar(4, y) * bar(4, x);
            break;
        case ThetaAddition::Theta3:
            lhs = 2.0 * th(3, x + y) * th(3, x - y);
            rhs = bar(3, x) * bar(3, y) + bar(4, y) * bar(4, x);
            break;
        case ThetaAddition::Theta4:
            lhs = 2.0 * th(4, x + y) * th(4, x - y);
            rhs = bar(4, x) * bar(3, y) + bar(4, y) * bar(3, x);
            break;
        case ThetaAddition::Mixed41:
            lhs = 2.0 * th(4, x + y) * th(1, x - y);
            rhs = bar(1, x) * bar(2, y) - bar(1, y) * bar(2, x);
            break;
        case ThetaAddition::Barred12:
            lhs = bar(1, x - y) * bar(2, x + y);
            rhs = th(1, 2.0 * x) * th(4, 2.0 * y) - th(1, 2.0 * y) * th(4, 2.0 * x);
            break;
    }
    const double scale = std::max({1.0, std::abs(rhs), std::abs(lhs)});
    return std::abs(lhs - rhs) / scale;
}

}  // namespace ellint
