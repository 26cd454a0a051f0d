#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ellint {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// e^{2 pi i z}: the single bridge between additive and multiplicative variables.
inline cplx e2pi(cplx z) { return std::exp(2.0 * pi * I * z); }

// Inverse of e2pi on the principal branch.
inline cplx log2pi(cplx y) { return std::log(y) / (2.0 * pi * I); }

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct PoleProximity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, cplx prev, cplx last)
        : std::runtime_error(what), previous(prev), latest(last) {}
    cplx previous;
    cplx latest;
};

struct ResidueError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExceptionalParameter : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BasisValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SamplerExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ArityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Regime { QLess1, QGreater1, QUnitCircle };

std::string to_string(Regime r);
Regime regime_from_string(const std::string& s);

// Additive moduli (eta, tau) with bases p = e^{2 pi i tau}, q = e^{4 pi i eta}.
class Moduli {
public:
    Moduli(cplx eta, cplx tau);
    // Principal-branch moduli with e^{2 pi i tau} = p and e^{4 pi i eta} = q.
    static Moduli from_bases(cplx p, cplx q);

    cplx eta() const { return eta_; }
    cplx tau() const { return tau_; }
    cplx p() const { return e2pi(tau_); }
    cplx q() const { return e2pi(2.0 * eta_); }
    // Base that stays inside the unit disc: q, or 1/q when |q| > 1.
    cplx q_inside() const { return regime() == Regime::QGreater1 ? e2pi(-2.0 * eta_) : q(); }
    // e^{2 pi i (tau/2 +- eta)}, the branch of sqrt(p q_inside) used by the kernels.
    cplx sqrt_pq() const;
    Regime regime() const;

private:
    cplx eta_;
    cplx tau_;
};

// Three quasi-periods and the six derived bases.
struct QuasiPeriods {
    cplx w1, w2, w3;

    cplx q() const { return e2pi(w1 / w2); }
    cplx p() const { return e2pi(w3 / w2); }
    cplx r() const { return e2pi(w3 / w1); }
    cplx q_mod() const { return e2pi(-w2 / w1); }
    cplx p_mod() const { return e2pi(-w2 / w3); }
    cplx r_mod() const { return e2pi(-w1 / w3); }
    cplx sum() const { return w1 + w2 + w3; }

    // Throws DomainError if n1 w1 + n2 w2 + n3 w3 nearly vanishes for |n_k| <= 8.
    void check_incommensurate(double tol = 1e-9) const;
};

}  // namespace ellint
