#include "ellint/contour.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace ellint {

cplx AnnulusEvaluator::operator()(cplx y) const {
    assert(annulus.contains(y) && "evaluator called outside its annulus");
    return fn(y);
}

std::vector<cplx> circle_nodes(int n, double offset) {
    std::vector<cplx> nodes(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) nodes[j] = e2pi((j + offset) / n);
    return nodes;
}

cplx circle_quadrature(const std::function<cplx(cplx)>& f, int n, double offset) {
    if (n < 8 || (n & (n - 1)) != 0) throw DomainError("circle_quadrature needs N >= 8, a power of two");
    cplx sum = 0.0;
    for (cplx y : circle_nodes(n, offset)) sum += f(y);
    return sum / double(n);
}

cplx circle_quadrature(const AnnulusEvaluator& f, int n, double offset) {
    if (!f.annulus.contains_unit_circle()) throw DomainError("unit circle outside the evaluator annulus");
    return circle_quadrature(f.fn, n, offset);
}

AdaptiveResult adaptive_circle(const AnnulusEvaluator& f, double tol) {
    int n = 32;
    cplx prev = circle_quadrature(f, n);
    while (n < 4096) {
        n *= 2;
        const cplx cur = circle_quadrature(f, n);
        // I_N, certified by its agreement with I_2N.
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return {prev, n / 2};
        if (n == 4096) throw ConvergenceError("adaptive_circle did not converge by N = 4096", prev, cur);
        prev = cur;
    }
    throw ConvergenceError("adaptive_circle did not converge", prev, prev);
}

PoleList normalized(PoleList poles) {
    std::stable_sort(poles.begin(), poles.end(),
                     [](const Pole& a, const Pole& b) { return std::abs(a.location) < std::abs(b.location); });
    PoleList out;
    for (const Pole& p : poles) {
        const bool dup = std::any_of(out.begin(), out.end(),
                                     [&](const Pole& o) { return std::abs(o.location - p.location) < 1e-12; });
        if (!dup) out.push_back(p);
    }
    return out;
}

namespace {

// Laurent coefficients a_{-1}, a_{-2} of g around c from a small circle.
std::pair<cplx, cplx> small_circle_coefficients(const std::function<cplx(cplx)>& g, cplx c, double radius) {
    constexpr int n = 64;
    cplx a1 = 0.0, a2 = 0.0;
    for (int j = 0; j < n; ++j) {
        const cplx d = radius * e2pi((j + 0.5) / n);
        const cplx v = g(c + d);
        a1 += v * d;
        a2 += v * d * d;
    }
    return {a1 / double(n), a2 / double(n)};
}

}  // namespace

cplx residue_corrected_integral(const std::function<cplx(cplx)>& f, int n, const PoleList& corrections) {
    cplx total = circle_quadrature(f, n);
    for (const Pole& pole : normalized(corrections)) {
        if (pole.order != 1) throw ResidueError("only simple poles can be corrected");
        const double r = std::abs(pole.location);
        if (std::abs(r - 1.0) < 1e-3) throw ResidueError("correction pole sits on the contour");
        cplx res;
        if (pole.residue) {
            res = *pole.residue;
        } else {
            auto g = [&](cplx y) { return f(y) / y; };
            const double radius = 1e-4 * std::max(1.0, r);
            auto [a1, a2] = small_circle_coefficients(g, pole.location, radius);
            if (std::abs(a2) > 1e-6 * radius * std::max(1.0, std::abs(a1)))
                throw ResidueError("pole is not simple");
            res = a1;
        }
        total += (r > 1.0) ? res : -res;
    }
    return total;
}

PoleScan pole_scan(const KernelPoleQuery& qy) {
    PoleScan scan{{}, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0};
    std::vector<cplx> inner, outer;
    const double ap = std::abs(qy.p), aq = std::abs(qy.q);
    cplx pj = 1.0;
    for (int j = 0; std::pow(ap, j) >= qy.cutoff; ++j, pj *= qy.p) {
        cplx pjqk = pj;
        for (int k = 0; std::pow(ap, j) * std::pow(aq, k) >= qy.cutoff; ++k, pjqk *= qy.q) {
            for (cplx s : {qy.y1, 1.0 / qy.y1}) {
                const cplx in = qy.t * s * pjqk;
                const cplx out = 1.0 / in;
                inner.push_back(in);
                outer.push_back(out);
                scan.poles.push_back({in, j, k, true, std::abs(in) > 1.0});
                scan.poles.push_back({out, j, k, false, std::abs(out) < 1.0});
            }
            if (qy.q == 0.0) break;
        }
        if (qy.p == 0.0) break;
    }
    std::sort(scan.poles.begin(), scan.poles.end(),
              [](const ScannedPole& a, const ScannedPole& b) { return std::abs(a.location) < std::abs(b.location); });
    for (const auto& p : scan.poles) {
        scan.contour_distance = std::min(scan.contour_distance, std::abs(std::abs(p.location) - 1.0));
        if (p.wrong_side) ++scan.wrong_side_count;
    }
    for (cplx a : inner)
        for (cplx b : outer) scan.pinch_distance = std::min(scan.pinch_distance, std::abs(a - b));
    return scan;
}

}  // namespace ellint
