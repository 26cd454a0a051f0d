// Command-line runner for the verification suites.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ellint/report.hpp"

namespace {

using namespace ellint;

constexpr int kConfigError = 2;

void list_suites() {
    for (const Suite& s : suite_registry()) {
        std::string regimes = s.q_less ? "QLess1" : "";
        if (s.q_greater) regimes += regimes.empty() ? "QGreater1" : ",QGreater1";
        std::printf("%-26s %-10s %-17s %s%s\n", s.id.c_str(), to_string(s.module).c_str(), regimes.c_str(),
                    s.anchor.c_str(), s.control ? " [control]" : "");
    }
}

std::string read_text(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void summarize(const RunResult& r) {
    if (!r.gate.pass) std::fprintf(stderr, "word gate FAILED\n");
    for (const auto& rec : r.records)
        std::fprintf(stderr, "%-26s %s residual %.3e tol %.0e N %d %lldms\n", rec.identity_id.c_str(),
                     rec.pass ? "PASS" : "FAIL", rec.residual, rec.tolerance, rec.n_used,
                     static_cast<long long>(rec.runtime_ms));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical certification of elliptic integral-operator identities"};
    app.require_subcommand(1);
    CLI::App* run = app.add_subcommand("run", "run verification suites");

    std::vector<std::string> suites;
    std::string seed, regime, out, config;
    double tol = 0, mmin = 0, mmax = 0;
    int grid = 0;
    bool list = false, reproducible = false;
    auto* o_suite = run->add_option("--suite", suites, "suite ids or 'all'")->delimiter(',');
    auto* o_seed = run->add_option("--seed", seed, "64-bit seed, decimal or 0x-hex (default 0xE11157)");
    auto* o_tol = run->add_option("--tol", tol, "tolerance override (controls keep their own)");
    auto* o_grid = run->add_option("--grid", grid, "quadrature points N for grid suites");
    auto* o_regime = run->add_option("--regime", regime, "QLess1 or QGreater1");
    auto* o_out = run->add_option("--out", out, "directory for report.json and residuals.csv");
    auto* o_mmin = run->add_option("--modulus-min", mmin, "lower bound of |p|, |q| draws");
    auto* o_mmax = run->add_option("--modulus-max", mmax, "upper bound of |p|, |q| draws");
    run->add_option("--config", config, "JSON config mirroring the flags; flags win");
    run->add_flag("--list", list, "print suite ids and exit");
    auto* o_repro = run->add_flag("--reproducible", reproducible, "write runtime_ms as 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    if (list) {
        list_suites();
        return 0;
    }

    RunConfig cfg;
    try {
        if (!config.empty()) cfg = config_from_json(read_text(config));
        if (o_suite->count()) cfg.suites = suites;
        if (o_seed->count()) cfg.seed = parse_seed(seed);
        if (o_tol->count()) cfg.tolerance = tol;
        if (o_grid->count()) cfg.grid = grid;
        if (o_regime->count()) cfg.regime = regime_from_string(regime);
        if (o_out->count()) cfg.out = out;
        if (o_mmin->count()) cfg.modulus_min = mmin;
        if (o_mmax->count()) cfg.modulus_max = mmax;
        if (o_repro->count()) cfg.reproducible = reproducible;
        validate(cfg);
        for (const auto& id : select_suites(cfg).skipped)
            std::fprintf(stderr, "skipping %s: no realization in %s\n", id.c_str(), to_string(cfg.regime).c_str());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    }

    try {
        const RunResult result = execute(cfg);
        summarize(result);
        if (cfg.out)
            write_outputs(result, *cfg.out);
        else
            std::cout << report_json(result);
        return result.all_pass() ? 0 : 1;
    } catch (const IoError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    }
}
