#pragma once

#include "ellint/core.hpp"

namespace ellint {

inline constexpr double kTruncation = 1e-18;
inline constexpr double kPoleGuard = 1e-10;
// Bases closer than this to the unit circle are rejected.
inline constexpr double kBaseMargin = 1e-3;

// Integer power by repeated squaring.
cplx ipow(cplx base, long n);

// (x; q)_inf for |q| < 1.
cplx qpochhammer(cplx x, cplx q);

// theta(t; p) = (t; p)(p/t; p). Bases outside the unit disc use theta(t; p) = 1/theta(1/t; 1/p).
cplx theta_mult(cplx t, cplx p);

// Jacobi theta_j(z | tau), j = 1..4, by its Fourier series.
cplx jacobi_theta(int j, cplx z, cplx tau);

// Gamma(t; p, q). A base outside the unit disc is handled by
// Gamma(t; p, q) = 1 / Gamma(t/q; p, 1/q) (and likewise for p).
cplx elliptic_gamma(cplx t, cplx p, cplx q);

// Additive form Gamma(z | tau, 2 eta) = Gamma(e^{2 pi i z}; e^{2 pi i tau}, e^{4 pi i eta}).
inline cplx elliptic_gamma_additive(cplx z, cplx tau, cplx two_eta) {
    return elliptic_gamma(e2pi(z), e2pi(tau), e2pi(two_eta));
}

// lim_{z -> c p^j q^k} (1 - c p^j q^k / z) Gamma(c / z; p, q), independent of c.
cplx gamma_residue_factor(int j, int k, cplx p, cplx q);

cplx bernoulli_B33(cplx u, const QuasiPeriods& w);
cplx bernoulli_B22(cplx u, cplx w1, cplx w2);

enum class GForm { Product, Modular };

// Modified elliptic gamma function G(u; w1, w2, w3).
cplx modified_gamma_G(cplx u, const QuasiPeriods& w, GForm form);

// |LHS - RHS| / |RHS| of the modular law
// theta(e^{-2 pi i u/w1}; e^{-2 pi i w2/w1}) = e^{pi i B22(u)} theta(e^{2 pi i u/w2}; e^{2 pi i w1/w2}).
double theta_modular_check(cplx u, cplx w1, cplx w2);

// |LHS - RHS| / max(1, |RHS|) of theta1(2x | 2 tau) = (-p;p)/(p;p) theta1(x|tau) theta2(x|tau).
double theta_duplication_check(cplx x, cplx tau);

// Product identities relating thetas of modulus tau to barred thetas of modulus tau/2.
enum class ThetaAddition { Theta1, Theta2, Theta3, Theta4, Mixed41, Barred12 };
inline constexpr ThetaAddition kThetaAdditions[] = {ThetaAddition::Theta1,  ThetaAddition::Theta2,
                                                    ThetaAddition::Theta3,  ThetaAddition::Theta4,
                                                    ThetaAddition::Mixed41, ThetaAddition::Barred12};
std::string to_string(ThetaAddition id);
double theta_addition_check(ThetaAddition id, cplx x, cplx y, cplx tau);

}  // namespace ellint
