// Reference computations written independently of the library code paths.
#pragma once

#include <cmath>
#include <complex>

namespace oracle {

using cplx = std::complex<double>;

inline cplx pochhammer(cplx x, cplx q, int terms = 200) {
    cplx v = 1.0, qk = 1.0;
    for (int k = 0; k < terms; ++k, qk *= q) v *= 1.0 - x * qk;
    return v;
}

inline cplx theta(cplx t, cplx p, int terms = 200) { return pochhammer(t, p, terms) * pochhammer(p / t, p, terms); }

// Raw double product over 0 <= j, k < terms.
inline cplx gamma(cplx t, cplx p, cplx q, int terms = 60) {
    cplx v = 1.0, pj = 1.0;
    for (int j = 0; j < terms; ++j, pj *= p) {
        cplx pq = pj;
        for (int k = 0; k < terms; ++k, pq *= q) v *= (1.0 - p * q * pq / t) / (1.0 - t * pq);
    }
    return v;
}

}  // namespace oracle
