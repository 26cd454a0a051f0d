#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "ellint/relations.hpp"

namespace ellint::support {

inline double rel(cplx got, cplx want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// Smallest |t p^j q^k - 1| or |p^{j+1} q^{k+1} / t - 1|: distance from the poles and zeros of Gamma(t; p, q).
inline double lattice_distance(cplx t, cplx p, cplx q) {
    double d = std::numeric_limits<double>::infinity();
    cplx pj = 1.0;
    for (int j = 0; std::abs(pj) > 1e-8; ++j, pj *= p) {
        cplx pq = pj;
        for (int k = 0; std::abs(pq) > 1e-8; ++k, pq *= q) {
            d = std::min(d, std::abs(t * pq - 1.0));
            d = std::min(d, std::abs(p * q * pq / t - 1.0));
        }
    }
    return d;
}

// Keeps the worst draw of a sweep for the report.
struct Worst {
    double residual = 0;
    DrawLog log;
    int draws = 0;

    template <class Fill>
    void offer(double r, Fill&& fill) {
        ++draws;
        if (!(r <= residual)) {  // NaN replaces the current worst as well
            residual = r;
            log = DrawLog{};
            fill(log);
        }
    }
    SuiteOutcome finish(int n_used = 0) {
        log.add("draws", std::to_string(draws));
        return {residual, n_used, std::move(log)};
    }
};

// Moduli for one suite: its own ranges, narrowed by the run context.
inline Moduli draw_moduli(Sampler& s, const RunContext& ctx, double lo, double hi) {
    const double a = std::max(lo, ctx.modulus_min), b = std::min(hi, ctx.modulus_max);
    if (!(a < b)) throw DomainError("suite modulus range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                    "] does not meet the configured range");
    return s.moduli(a, b, a, b, ctx.regime);
}

}  // namespace ellint::support
