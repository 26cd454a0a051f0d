#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ellint/core.hpp"

namespace ellint {

struct ResidualReport {
    std::string identity_id;
    std::string anchor;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> draw;  // parameter name -> printed value
    double residual = 0;
    double tolerance = 0;
    bool pass = false;
    int n_used = 0;
    std::int64_t runtime_ms = 0;
};

// Reproducible draws: one stream per (seed, suite, attempt), independent of thread scheduling.
class Sampler {
public:
    Sampler(std::uint64_t seed, std::string_view stream);

    double uniform(double lo, double hi);
    cplx phase();
    // Modulus uniform in [rlo, rhi], argument uniform.
    cplx polar(double rlo, double rhi);
    // Moduli with |p| and |q| (or |1/q| for QGreater1) in the given ranges.
    Moduli moduli(double p_lo, double p_hi, double q_lo, double q_hi, Regime regime);

private:
    std::mt19937_64 rng_;
};

// Parameter values recorded in a report.
class DrawLog {
public:
    void add(std::string name, double v);
    void add(std::string name, cplx v);
    void add(std::string name, std::string v);
    std::vector<std::pair<std::string, std::string>> take() { return std::move(values_); }

private:
    std::vector<std::pair<std::string, std::string>> values_;
};

struct RunContext {
    std::uint64_t seed = 0xE11157;
    Regime regime = Regime::QLess1;
    std::optional<int> grid;        // overrides a suite's default N
    std::optional<double> tolerance;  // overrides a suite's tolerance (not for controls)
    // Sampler ranges for |p| and |q|; suites with tighter operator domains clip to their own.
    double modulus_min = 0.05;
    double modulus_max = 0.5;
};

struct SuiteOutcome {
    double residual = 0;
    int n_used = 0;
    DrawLog draw;
};

// Builds the stream name for attempt i of a rejection sampler.
std::string attempt_stream(std::string_view suite, int attempt);

// Calls draw(sampler) on fresh streams until it returns a value; SamplerExhausted after max_attempts.
template <class T>
std::pair<T, int> draw_until(std::uint64_t seed, std::string_view suite, int max_attempts,
                             const std::function<std::optional<T>(Sampler&)>& draw) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Sampler s(seed, attempt_stream(suite, attempt));
        if (auto v = draw(s)) return {std::move(*v), attempt};
    }
    throw SamplerExhausted(std::string(suite) + ": no admissible draw in " + std::to_string(max_attempts) +
                           " attempts");
}

enum class Module { SpecialFn, Contour, Sklyanin, Operators, Relations };
std::string to_string(Module m);

struct Suite {
    std::string id;
    Module module;
    std::string anchor;
    double tolerance;
    int default_n;      // 0 when the suite has no grid
    bool control;       // passes when the residual exceeds the tolerance
    bool q_greater;     // has a |q| > 1 realization
    bool q_less = true; // has a |q| < 1 realization
    std::function<SuiteOutcome(const RunContext&, int n)> run;
};

// All suites in dependency order.
const std::vector<Suite>& suite_registry();
const Suite* find_suite(std::string_view id);

ResidualReport run_suite(const Suite& suite, const RunContext& ctx);

// Each module contributes its suites.
std::vector<Suite> special_fn_suites();
std::vector<Suite> sklyanin_suites();
std::vector<Suite> operator_suites();
std::vector<Suite> identity_suites();

// Identity checks used by the suites and the tests; each returns the residual of one draw.
double check_beta_integral(std::uint64_t seed, Regime regime, int n, bool unbalanced, DrawLog* log = nullptr);
// Operator form on a two-variable grid, and the pointwise kernel form at 20 triples.
double check_coxeter_cubic(std::uint64_t seed, Regime regime, int n, bool shifted, DrawLog* log = nullptr);
double check_coxeter_kernel(std::uint64_t seed, Regime regime, int n, bool shifted, DrawLog* log = nullptr);
double check_inversion(std::uint64_t seed, Regime regime, int n, bool weak, bool wrong_t, DrawLog* log = nullptr);
double check_bailey_STR(std::uint64_t seed, Regime regime, int n, bool shifted, DrawLog* log = nullptr);
double check_bailey_lemma(std::uint64_t seed, Regime regime, int n, bool shifted, DrawLog* log = nullptr);
double check_star_triangle_functional(std::uint64_t seed, Regime regime, int n, bool shifted,
                                      DrawLog* log = nullptr);
enum class IntertwinedSide { S1, S3 };
enum class GeneratorFamily { Modified, ModularPartner };
double check_intertwining(std::uint64_t seed, IntertwinedSide which, GeneratorFamily family, Regime regime, int n,
                          bool same_spin, DrawLog* log = nullptr);
double check_RLL(std::uint64_t seed, bool doubled, int n, bool swapped, DrawLog* log = nullptr);
double check_R_direct(std::uint64_t seed, int n, DrawLog* log = nullptr);
double check_YBE(std::uint64_t seed, int n, bool misassigned, DrawLog* log = nullptr);
double check_YBE_words(std::uint64_t seed, int n, DrawLog* log = nullptr);

}  // namespace ellint
