// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ellint/report.hpp"

namespace {

using namespace ellint;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kBaseSeed = 0xE11157;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Sweep {
    std::string id;
    int draws = 0;
    int failures = 0;
    double worst = 0;  // largest residual (smallest for controls)
    double tolerance = 0;
    double seconds = 0;
    double slowest = 0;
    std::string note;
};

// One draw per seed, seeds kBaseSeed, kBaseSeed + 1, ...
Sweep sweep(const std::string& id, int draws, Regime regime = Regime::QLess1) {
    const Suite* suite = find_suite(id);
    Sweep s{id, draws};
    s.worst = suite->control ? INFINITY : 0.0;
    const auto t0 = Clock::now();
    for (int i = 0; i < draws; ++i) {
        RunContext ctx;
        ctx.seed = kBaseSeed + static_cast<std::uint64_t>(i);
        ctx.regime = regime;
        const auto t1 = Clock::now();
        const ResidualReport r = run_suite(*suite, ctx);
        s.slowest = std::max(s.slowest, seconds_since(t1));
        s.tolerance = r.tolerance;
        if (!r.pass) {
            ++s.failures;
            if (s.note.empty()) {
                s.note = "seed " + std::to_string(ctx.seed);
                for (const auto& [k, v] : r.draw)
                    if (k == "error") s.note += ": " + v;
            }
        }
        s.worst = suite->control ? std::min(s.worst, r.residual) : std::max(s.worst, r.residual);
        if (std::isnan(r.residual)) s.worst = r.residual;
    }
    s.seconds = seconds_since(t0);
    return s;
}

class Criterion {
public:
    explicit Criterion(std::string name) : name_(std::move(name)), t0_(Clock::now()) {}

    void add(const Sweep& s) {
        ok_ = ok_ && s.failures == 0;
        char buf[256];
        std::snprintf(buf, sizeof buf, "    %-26s %2d seed(s) %s %.3e (tol %.0e) %.1fs%s%s\n", s.id.c_str(), s.draws,
                      find_suite(s.id)->control ? "min" : "max", s.worst, s.tolerance, s.seconds,
                      s.failures ? " FAILED at " : "", s.note.c_str());
        detail_ += buf;
    }
    void require(bool cond, const std::string& what) {
        ok_ = ok_ && cond;
        detail_ += "    " + what + (cond ? "" : "  <-- violated") + "\n";
    }
    double elapsed() const { return seconds_since(t0_); }
    bool finish() const {
        std::printf("%s %s (%.1fs)\n%s", name_.c_str(), ok_ ? "PASS" : "FAIL", elapsed(), detail_.c_str());
        std::fflush(stdout);
        return ok_;
    }

private:
    std::string name_;
    Clock::time_point t0_;
    bool ok_ = true;
    std::string detail_;
};

std::string time_bound(const char* what, double seconds, double limit) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s %.1fs < %.0fs", what, seconds, limit);
    return buf;
}

void beta_sweeps(Criterion& c, Regime regime) {
    const auto t0 = Clock::now();
    c.add(sweep("beta", 25, regime));
    c.add(sweep("beta_control", 25, regime));
    c.require(seconds_since(t0) < 10.0, time_bound("beta runtime", seconds_since(t0), 10));
}

void intertwining_sweeps(Criterion& c, Regime regime) {
    for (const char* id : {"intertwining_S1_modified", "intertwining_S3_modified", "intertwining_S1_partner",
                           "intertwining_S3_partner"})
        c.add(sweep(id, 10, regime));
    c.add(sweep("intertwining_control", 3, regime));
}

void coxeter_sweeps(Criterion& c, Regime regime) {
    for (const char* id : {"coxeter_kernel", "coxeter", "bailey_str", "star_triangle"}) c.add(sweep(id, 10, regime));
    for (const char* id : {"coxeter_control", "bailey_str_control", "star_triangle_control"})
        c.add(sweep(id, 3, regime));
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    bool all = true;

    {
        Criterion c("A1");
        beta_sweeps(c, Regime::QLess1);
        all &= c.finish();
    }

    {
        Criterion c("A2");
        for (const char* id : {"theta_addition", "theta_duplication", "theta_modular", "gamma_reflection",
                               "gamma_shifts", "G_normalization", "G_reflection", "G_forms"})
            c.add(sweep(id, 1));
        c.require(c.elapsed() < 30.0, time_bound("runtime", c.elapsed(), 30));
        all &= c.finish();
    }
    {
        Criterion c("A3");
        for (const char* id : {"structure_constants", "sklyanin_relations", "casimir_values", "casimir_commutation",
                               "L_factorization", "spin_half"})
            c.add(sweep(id, 1));
        c.require(c.elapsed() < 30.0, time_bound("runtime", c.elapsed(), 30));
        all &= c.finish();
    }

    {
        Criterion c("A4");
        intertwining_sweeps(c, Regime::QLess1);
        all &= c.finish();
    }
    {
        Criterion c("A5");
        coxeter_sweeps(c, Regime::QLess1);
        all &= c.finish();
    }

    {
        Criterion c("A6");
        c.add(sweep("inversion", 10));
        c.add(sweep("inversion_weak", 5));
        c.add(sweep("inversion_control", 3));
        all &= c.finish();
    }
    {
        Criterion c("A7");
        c.add(sweep("bailey_lemma", 5));
        c.add(sweep("bailey_lemma_control", 3));
        all &= c.finish();
    }
    {
        Criterion c("A8");
        c.add(sweep("rll", 5));
        c.add(sweep("rll_double", 5));
        c.add(sweep("rll_control", 1));
        c.add(sweep("R_direct", 5));
        c.add(sweep("R_structure", 1));
        all &= c.finish();
    }
    {
        Criterion c("A9");
        const auto gate = perm::ybe_word_gate();
        c.require(gate.pass, "word-level gate (" + std::to_string(gate.links.size()) + " identities)");
        if (gate.pass) {
            c.add(sweep("ybe_words", 3));
            const Sweep ybe = sweep("ybe", 3);
            c.add(ybe);
            c.require(ybe.slowest <= 300.0, time_bound("slowest draw", ybe.slowest, 300));
            c.add(sweep("ybe_control", 1));
        }
        all &= c.finish();
    }
    {
        Criterion c("A10");
        c.add(sweep("B_limits", 1));
        c.add(sweep("zero_modes", 1));
        c.add(sweep("meromorphic_zero_mode", 1));
        all &= c.finish();
    }

    {
        Criterion c("A11");
        beta_sweeps(c, Regime::QGreater1);
        intertwining_sweeps(c, Regime::QGreater1);
        coxeter_sweeps(c, Regime::QGreater1);
        all &= c.finish();
    }

    {
        Criterion c("A12");
        RunConfig cfg;
        cfg.suites = {"theta_modular", "quadrature_exact", "beta", "beta_control", "inversion", "zero_modes"};
        cfg.reproducible = true;
        const auto dir = std::filesystem::temp_directory_path() / "ellint_acceptance";
        std::string csv[2];
        for (int run = 0; run < 2; ++run) {
            write_outputs(execute(cfg), dir / std::to_string(run));
            csv[run] = slurp(dir / std::to_string(run) / "residuals.csv");
        }
        c.require(!csv[0].empty() && csv[0] == csv[1], "residuals.csv byte-identical across two runs (" +
                                                          std::to_string(csv[0].size()) + " bytes)");
        c.require(slurp(dir / "0" / "report.json") == slurp(dir / "1" / "report.json"),
                  "report.json byte-identical across two runs");
        std::filesystem::remove_all(dir);
        all &= c.finish();
    }

    return all ? 0 : 1;
}
