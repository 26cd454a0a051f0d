#include "ellint/core.hpp"

#include <algorithm>
#include <cmath>

namespace ellint {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::QLess1: return "QLess1";
        case Regime::QGreater1: return "QGreater1";
        case Regime::QUnitCircle: return "QUnitCircle";
    }
    return "?";
}

Regime regime_from_string(const std::string& s) {
    if (s == "QLess1") return Regime::QLess1;
    if (s == "QGreater1") return Regime::QGreater1;
    if (s == "QUnitCircle") return Regime::QUnitCircle;
    throw DomainError("unknown regime '" + s + "'");
}

Moduli::Moduli(cplx eta, cplx tau) : eta_(eta), tau_(tau) {
    if (!(tau.imag() > 0.0)) throw DomainError("Im(tau) must be positive");
}

Moduli Moduli::from_bases(cplx p, cplx q) { return {log2pi(q) / 2.0, log2pi(p)}; }

Regime Moduli::regime() const {
    const double im = eta_.imag();
    if (std::abs(im) < 1e-14) return Regime::QUnitCircle;
    return im > 0.0 ? Regime::QLess1 : Regime::QGreater1;
}

cplx Moduli::sqrt_pq() const {
    return regime() == Regime::QGreater1 ? e2pi(tau_ / 2.0 - eta_) : e2pi(tau_ / 2.0 + eta_);
}

void QuasiPeriods::check_incommensurate(double tol) const {
    if (w1 == 0.0 || w2 == 0.0 || w3 == 0.0) throw DomainError("zero quasi-period");
    const double scale = std::max({std::abs(w1), std::abs(w2), std::abs(w3)});
    for (int a = -8; a <= 8; ++a)
        for (int b = -8; b <= 8; ++b)
            for (int c = -8; c <= 8; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                const cplx s = double(a) * w1 + double(b) * w2 + double(c) * w3;
                if (std::abs(s) < tol * scale)
                    throw DomainError("quasi-periods are commensurate at small integers");
            }
}

}  // namespace ellint
