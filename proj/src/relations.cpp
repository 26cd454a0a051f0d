#include "ellint/relations.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

namespace ellint {

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string print(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Sampler::Sampler(std::uint64_t seed, std::string_view stream) {
    const std::uint64_t h = fnv1a(stream);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    rng_.seed(seq);
}

double Sampler::uniform(double lo, double hi) {
    // 53 random bits; std::uniform_real_distribution is not specified bit-for-bit across libraries.
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

cplx Sampler::phase() { return std::polar(1.0, uniform(-pi, pi)); }

cplx Sampler::polar(double rlo, double rhi) {
    const double r = uniform(rlo, rhi);
    return r * phase();
}

Moduli Sampler::moduli(double p_lo, double p_hi, double q_lo, double q_hi, Regime regime) {
    const cplx p = polar(p_lo, p_hi);
    const cplx q = polar(q_lo, q_hi);
    if (regime == Regime::QUnitCircle) throw DomainError("the sampler draws |q| != 1 only");
    return Moduli::from_bases(p, regime == Regime::QGreater1 ? 1.0 / q : q);
}

void DrawLog::add(std::string name, double v) { values_.emplace_back(std::move(name), print(v)); }

void DrawLog::add(std::string name, cplx v) {
    values_.emplace_back(std::move(name), print(v.real()) + (v.imag() < 0 ? "" : "+") + print(v.imag()) + "i");
}

void DrawLog::add(std::string name, std::string v) { values_.emplace_back(std::move(name), std::move(v)); }

std::string attempt_stream(std::string_view suite, int attempt) {
    return std::string(suite) + "#" + std::to_string(attempt);
}

std::string to_string(Module m) {
    switch (m) {
        case Module::SpecialFn: return "special_fn";
        case Module::Contour: return "contour";
        case Module::Sklyanin: return "sklyanin";
        case Module::Operators: return "operators";
        case Module::Relations: return "relations";
    }
    return "?";
}

const std::vector<Suite>& suite_registry() {
    static const std::vector<Suite> all = [] {
        std::vector<Suite> v;
        for (auto part : {special_fn_suites(), sklyanin_suites(), operator_suites(), identity_suites()})
            v.insert(v.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
        return v;
    }();
    return all;
}

const Suite* find_suite(std::string_view id) {
    for (const Suite& s : suite_registry())
        if (s.id == id) return &s;
    return nullptr;
}

ResidualReport run_suite(const Suite& suite, const RunContext& ctx) {
    ResidualReport r;
    r.identity_id = suite.id;
    r.anchor = suite.anchor;
    r.seed = ctx.seed;
    r.tolerance = ctx.tolerance && !suite.control ? *ctx.tolerance : suite.tolerance;
    const int n = suite.default_n > 0 ? ctx.grid.value_or(suite.default_n) : 0;
    const auto start = std::chrono::steady_clock::now();
    try {
        SuiteOutcome out = suite.run(ctx, n);
        r.residual = out.residual;
        r.n_used = out.n_used;
        r.draw = out.draw.take();
        r.pass = std::isfinite(r.residual) && (suite.control ? r.residual > r.tolerance : r.residual <= r.tolerance);
    } catch (const std::exception& e) {
        r.residual = std::numeric_limits<double>::infinity();
        r.n_used = n;
        r.draw = {{"error", e.what()}};
        r.pass = false;
    }
    r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                       .count();
    r.draw.insert(r.draw.begin(), {"regime", to_string(ctx.regime)});
    return r;
}

}  // namespace ellint
