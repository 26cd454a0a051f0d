#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <span>
#include <vector>

#include "ellint/core.hpp"

namespace ellint {

// Functions of the additive variable z.
using ZFn = std::function<cplx(cplx)>;

enum class Variant { Standard, Modified, HalfShifted, ModularPartner, SecondDouble };

std::string to_string(Variant v);

// Spin and spectral bookkeeping for one site: u1 = u/2 + g/2, u2 = u/2 - g/2 with g = eta (2l + 1).
struct SiteParams {
    cplx u;
    cplx ell;

    cplx g(cplx eta) const { return eta * (2.0 * ell + 1.0); }
    cplx s(cplx eta) const { return 2.0 * eta * (ell + 1.0); }
    cplx u1(cplx eta) const { return 0.5 * u + 0.5 * g(eta); }
    cplx u2(cplx eta) const { return 0.5 * u - 0.5 * g(eta); }
    static SiteParams from_pair(cplx u1, cplx u2, cplx eta) { return {u1 + u2, (u1 - u2) / (2.0 * eta) - 0.5}; }
};

struct SpectralData {
    cplx eta;
    SiteParams first, second, third;
};

// Sum of terms coeff(z) * f(z + shift). Composition keeps every product term separate.
class DifferenceOperator {
public:
    struct Term {
        ZFn coeff;
        cplx shift;
    };

    DifferenceOperator() = default;
    DifferenceOperator(std::vector<Term> terms, Variant v) : terms_(std::move(terms)), variant_(v) {}

    cplx apply(const ZFn& f, cplx z) const;
    ZFn apply(ZFn f) const;
    // sum over terms of |coeff(z) f(z + shift)|: the size of what apply() adds up.
    double magnitude(const ZFn& f, cplx z) const;

    const std::vector<Term>& terms() const { return terms_; }
    Variant variant() const { return variant_; }
    double max_shift_imag() const;

    // (A * B) f = A (B f).
    friend DifferenceOperator operator*(const DifferenceOperator& a, const DifferenceOperator& b);
    friend DifferenceOperator operator+(const DifferenceOperator& a, const DifferenceOperator& b);
    friend DifferenceOperator operator*(cplx c, const DifferenceOperator& a);

private:
    std::vector<Term> terms_;
    Variant variant_ = Variant::Standard;
};

// Effective data of a realization: every variant is one of five coefficient shapes evaluated at
// (eta_eff, tau_eff, g_eff) in the rescaled coordinate z / z_scale.
struct Realization {
    enum class Shape { Plain, Half, Conjugated, ConjugatedHalf, Inverted };
    Shape shape;
    cplx eta;
    cplx tau;
    cplx g;
    cplx z_scale = 1.0;
};

Realization realization(cplx ell, const Moduli& m, Variant v);

DifferenceOperator make_generator(int a, cplx ell, const Moduli& m, Variant v);
std::array<DifferenceOperator, 4> make_generators(cplx ell, const Moduli& m, Variant v);

struct StructureConstants {
    cplx J12, J23, J31, J1, J2, J3;
};

StructureConstants structure_constants(cplx eta, cplx tau);
// Constants of the algebra a given variant realizes.
StructureConstants structure_constants(const Moduli& m, Variant v);

struct CasimirValues {
    cplx K0, K2;
};

CasimirValues casimir_values(cplx ell, const Moduli& m, Variant v);

DifferenceOperator casimir_K0(const std::array<DifferenceOperator, 4>& s);
DifferenceOperator casimir_K2(const std::array<DifferenceOperator, 4>& s, const StructureConstants& c);

// Deterministic sample points z = x + i*imag with x from a base-3 Halton sequence,
// kept at least 1e-2 away from the zeros of theta1(2z) on the real line.
std::vector<cplx> sample_points(int n, double imag = 0.0);

struct TestFunction {
    std::string name;
    ZFn fn;
};

// {1, y+1/y, y^2+1/y^2, theta3(z|tau/2), theta4(z|tau/2), their product}.
std::vector<TestFunction> test_family(cplx tau);

// Max over functions of max_z |lhs f - rhs f| / max(1, term magnitudes of either side).
double operator_residual(const DifferenceOperator& lhs, const DifferenceOperator& rhs,
                         std::span<const TestFunction> fns, std::span<const cplx> zs);

// Largest residual among the six quadratic relations.
double quadratic_relations_residual(cplx ell, const Moduli& m, Variant v, std::span<const TestFunction> fns,
                                    std::span<const cplx> zs);

double casimir_check(cplx ell, const Moduli& m, Variant v, std::span<const TestFunction> fns,
                     std::span<const cplx> zs);

// max over a of the residual of [K, S^a] = 0 for K0 and K2.
double casimir_commutation_check(cplx ell, const Moduli& m, Variant v, std::span<const TestFunction> fns,
                                 std::span<const cplx> zs);

using OperatorMatrix = std::array<std::array<DifferenceOperator, 2>, 2>;

// sum_a w_a(u) sigma_a (x) S^a with w_a(u) = theta_{a+1}(u + eta_e)/theta_{a+1}(eta_e).
OperatorMatrix L_operator(const SiteParams& site, const Moduli& m, Variant v);

// (1/theta1(2z)) M(z-u1; z+u1) diag(e^{eta d}, e^{-eta d}) N(z-u2; z+u2). Standard and HalfShifted only.
OperatorMatrix L_factorized(const SiteParams& site, const Moduli& m, Variant v);

// Barred thetas: modulus tau/2.
Eigen::Matrix2cd M_matrix(cplx a, cplx b, cplx tau);
Eigen::Matrix2cd N_matrix(cplx a, cplx b, cplx tau);
// Closed forms of N(a1;b1) M(a2;b2) and N(a1;b1) sigma3 M(a2;b2).
Eigen::Matrix2cd NM_product_closed(cplx a1, cplx b1, cplx a2, cplx b2, cplx tau);
Eigen::Matrix2cd NsM_product_closed(cplx a1, cplx b1, cplx a2, cplx b2, cplx tau);

Eigen::Matrix2cd pauli(int a);
Eigen::Matrix4cd baxter_R(cplx u, cplx eta, cplx tau);

// Matrix of S^a on the basis {theta4(z|tau/2), theta3(z|tau/2)}, fitted from point values,
// together with the fit residual.
struct BasisMatrix {
    Eigen::Matrix2cd matrix;
    double fit_residual;
};
BasisMatrix spin_half_matrix(const DifferenceOperator& op, cplx tau);

}  // namespace ellint
