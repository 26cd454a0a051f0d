#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ellint/contour.hpp"
#include "ellint/core.hpp"

namespace ellint {

using Fn1 = std::function<cplx(cplx)>;
using Fn2 = std::function<cplx(cplx, cplx)>;
using Fn3 = std::function<cplx(cplx, cplx, cplx)>;

enum class KernelVariant { QLess1, QGreater1, HalfShifted };

std::string to_string(KernelVariant v);

// Bases and constants shared by the integral operators. `q` is always the base inside the
// unit disc (1/q for |q| > 1) and `root` the square root of p q entering the multiplier.
class KernelSet {
public:
    KernelSet(const Moduli& m, KernelVariant v);
    KernelSet(cplx p, cplx q, cplx root, KernelVariant v);

    cplx p() const { return p_; }
    cplx q() const { return q_; }
    cplx root() const { return root_; }
    cplx kappa() const { return kappa_; }
    KernelVariant variant() const { return variant_; }

    cplx gamma(cplx t) const;
    // Multiplicative parameter of S1(a): e^{-2 pi i a}, or e^{2 pi i a} for |q| > 1.
    cplx s1_parameter(cplx a) const;
    // Prefactor of the S2(a) weight: root e^{2 pi i a}, or root e^{-2 pi i a} for |q| > 1.
    cplx s2_parameter(cplx a) const;
    // Gamma(r y1^{+-1} y2^{+-1}).
    cplx s2_weight(cplx a, cplx y1, cplx y2) const;
    cplx s2_weight_r(cplx r, cplx y1, cplx y2) const;
    // Gamma(t y^{+-1} x^{+-1}) / Gamma(x^{+-2}).
    cplx s1_kernel(cplx t, cplx y, cplx x) const;
    // kappa / Gamma(t^2); throws ExceptionalParameter within 1e-6 of the lattice t^2 = p^-j q^-k.
    cplx s1_norm(cplx t) const;
    // Exact limits of S1 at t = +1 (identity) and t = -1 (parity), if t is one of them.
    std::optional<int> s1_limit(cplx t) const;

private:
    cplx p_, q_, root_;
    KernelVariant variant_;
    cplx kappa_;
};

// Samples on an N^dims product of circle nodes, row-major with the last axis fastest.
struct TorusGrid {
    int n = 0;
    int dims = 0;
    std::vector<cplx> values;

    static TorusGrid sample(int n, const Fn1& f);
    static TorusGrid sample(int n, const Fn2& f);
    static TorusGrid sample(int n, const Fn3& f);

    std::vector<cplx> nodes() const { return circle_nodes(n); }
    std::size_t size() const { return values.size(); }
    std::size_t stride(int axis) const;
    cplx& at(std::span<const int> idx);
    // Index of the reflected node 1/y_j on the half-offset grid.
    int reflect(int j) const { return n - 1 - j; }
    // Max relative deviation from f(1/y) = f(y) along the given axis.
    double symmetry_defect(int axis) const;
};

// Grid forms of the operators (rows: output nodes, columns: input nodes, quadrature weight included).
Eigen::MatrixXcd s1_matrix(const KernelSet& k, cplx a, int n);
// Same operator addressed by its multiplicative parameter (the elliptic Fourier transform M(t)).
Eigen::MatrixXcd s1_matrix_t(const KernelSet& k, cplx t, int n);
// Multiplier values S2(a)(y_i, y_j).
Eigen::MatrixXcd s2_matrix(const KernelSet& k, cplx a, int n);

void apply_along(TorusGrid& g, int axis, const Eigen::MatrixXcd& m);
void multiply_pair(TorusGrid& g, int axis1, int axis2, const Eigen::MatrixXcd& w);
void swap_axes(TorusGrid& g, int axis1, int axis2);

// S1(a) applied to nodal values of f, evaluated at an arbitrary point y.
cplx s1_at(const KernelSet& k, cplx a, std::span<const cplx> f_nodes, cplx y);

// Elliptic Fourier transform M(t) at w, by its own quadrature loop.
cplx bailey_M(const KernelSet& k, cplx t, const Fn1& f, cplx w, int n);
// D(s; y, w) = Gamma(sqrt(pq) s^{-1} y^{+-1} w^{+-1}).
cplx bailey_D(const KernelSet& k, cplx s, cplx y, cplx w);

struct RParams {
    cplx u1, u2, v1, v2;
};

// R(u|v) = S2(u1 - v2) S1(u1 - v1) S3(u2 - v2) S2(u2 - v1) on the axes (axis1, axis2).
class ROperator {
public:
    ROperator(KernelSet k, RParams r, int n);

    void apply_grid(TorusGrid& g, int axis1 = 0, int axis2 = 1) const;

    // R f evaluated off the grid: the inner transforms use nodal values of f.
    class Action {
    public:
        cplx operator()(cplx y1, cplx y2) const;

    private:
        friend class ROperator;
        const ROperator* op_ = nullptr;
        Fn2 f_;
        Eigen::MatrixXcd inner_;
    };
    Action prepare(const Fn2& f) const;

    const KernelSet& kernels() const { return k_; }
    const RParams& params() const { return r_; }
    int n() const { return n_; }

private:
    KernelSet k_;
    RParams r_;
    int n_;
};

// P12 R(u|v) written as one double integral, evaluated pointwise by nested quadrature.
cplx R_direct(const KernelSet& k, const RParams& r, const Fn2& f, cplx y1, cplx y2, int n);

// Terminating residue sum standing in for S1 at t = sign q^{-lq-1/2} p^{-lp-1/2}.
struct DiscreteSum {
    cplx value;
    double magnitude;  // sum of |term|
};
DiscreteSum B_discrete_sum(const Moduli& m, double lq, double lp, int sign, const Fn1& f, cplx w);
cplx B_discrete(const Moduli& m, double lq, double lp, int sign, const Fn1& f, cplx w);

enum class ThetaBase { P, Q };

// Even theta functions of order 4l for the chosen base, validated before return.
std::vector<AnnulusEvaluator> theta_plus_basis(double ell, ThetaBase base, const Moduli& m);

// Size of B_discrete f on sample points relative to max(1, |f|, summed term magnitudes), f = theta+_{4 lq}(.;p)[i] * theta+_{4 lp}(.;q)[j],
// with order -2 realized as a reciprocal. nullopt when no zero modes exist.
std::optional<double> zero_mode_check(const Moduli& m, double lq, double lp, int i, int j);

// S1 applied to the meromorphic function Gamma(t1 z^{+-1}, t2 z^{+-1}), with the contour pushed past the
// poles at t_k p^j q^k that lie outside the unit circle.
cplx s1_on_gamma_pair(const KernelSet& k, cplx t, cplx t1, cplx t2, cplx w, int n);

// The inversion double integral with the inner contour around t^{-1} w^{+-1}, evaluated at each x.
// inner_t replaces t in the inner transform (a deliberately mismatched pair when it differs).
std::vector<cplx> inversion_values(const KernelSet& k, cplx t, const Fn1& f, std::span<const cplx> xs, int n,
                                   std::optional<cplx> inner_t = std::nullopt);

}  // namespace ellint
