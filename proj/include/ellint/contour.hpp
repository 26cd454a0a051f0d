#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "ellint/core.hpp"

namespace ellint {

// Default grid phase: nodes at e^{2 pi i (j + 1/2)/N}, which never hit y = +-1.
inline constexpr double kGridOffset = 0.5;

struct Annulus {
    double inner = 0.0;
    double outer = std::numeric_limits<double>::infinity();

    bool contains(cplx y) const {
        const double r = std::abs(y);
        return r > inner && r < outer;
    }
    bool contains_unit_circle() const { return inner < 1.0 && outer > 1.0; }
    Annulus intersect(const Annulus& o) const { return {std::max(inner, o.inner), std::min(outer, o.outer)}; }
};

// Pointwise function of one multiplicative variable with its domain of analyticity.
struct AnnulusEvaluator {
    std::function<cplx(cplx)> fn;
    Annulus annulus{};
    bool symmetric = false;  // f(y) = f(1/y)

    cplx operator()(cplx y) const;
};

// N-point trapezoid rule on |y| = 1 with measure dy/(2 pi i y).
cplx circle_quadrature(const AnnulusEvaluator& f, int n, double offset = kGridOffset);
cplx circle_quadrature(const std::function<cplx(cplx)>& f, int n, double offset = kGridOffset);

// Nodes of the N-point circle rule.
std::vector<cplx> circle_nodes(int n, double offset = kGridOffset);

struct AdaptiveResult {
    cplx value;
    int n_used;
};

// Doubles N from 32 until |I_2N - I_N| <= tol max(1, |I_2N|), capped at 4096; returns (I_N, N).
AdaptiveResult adaptive_circle(const AnnulusEvaluator& f, double tol);

struct Pole {
    cplx location;
    int order = 1;
    // Residue of f(y)/y at the pole (the integrand including the measure). Computed numerically if absent.
    std::optional<cplx> residue;
};

using PoleList = std::vector<Pole>;

// Sorts by modulus and drops near duplicates (within 1e-12).
PoleList normalized(PoleList poles);

// Integral over the deformed contour: the unit circle, pushed outward around listed poles
// with |y| > 1 and inward past listed poles with |y| < 1.
cplx residue_corrected_integral(const std::function<cplx(cplx)>& f, int n, const PoleList& corrections);

// Poles of the intertwining kernel Gamma(t y1^{+-1} y^{+-1}; p, q) in the y-plane.
struct KernelPoleQuery {
    cplx t;
    cplx y1;
    cplx p;
    cplx q;
    double cutoff = 1e-6;  // keep lattice points with |p|^j |q|^k above this
};

struct ScannedPole {
    cplx location;
    int j;
    int k;
    bool inner_family;   // belongs to the sequence that must stay inside the contour
    bool wrong_side;     // sits on the opposite side of the unit circle
};

struct PoleScan {
    std::vector<ScannedPole> poles;  // sorted by modulus
    double contour_distance;         // min | |y| - 1 |
    double pinch_distance;           // min distance between an inner-family and outer-family pole
    int wrong_side_count;
};

PoleScan pole_scan(const KernelPoleQuery& query);

}  // namespace ellint
