#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ellint/perm_engine.hpp"
#include "ellint/relations.hpp"

namespace ellint {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::vector<std::string> suites{"all"};
    std::uint64_t seed = 0xE11157;
    std::optional<int> grid;
    std::optional<double> tolerance;
    Regime regime = Regime::QLess1;
    double modulus_min = 0.05;
    double modulus_max = 0.5;
    std::optional<std::filesystem::path> out;  // directory receiving report.json and residuals.csv
    bool reproducible = false;                 // zero runtime_ms so reruns are byte-identical
};

// Keys mirror the command-line flags: suite (string or list), seed (integer or "0x..." string), tol, grid,
// regime, out, modulus_min, modulus_max, reproducible. Unknown keys are rejected.
RunConfig config_from_json(std::string_view text);
void validate(const RunConfig& cfg);
// Decimal or 0x-prefixed hex; ConfigError otherwise.
std::uint64_t parse_seed(std::string_view text);

struct Selection {
    std::vector<const Suite*> suites;  // registry (dependency) order
    std::vector<std::string> skipped;  // explicitly requested but not realized in the regime
};
// ConfigError on unknown ids.
Selection select_suites(const RunConfig& cfg);

struct RunResult {
    perm::GateResult gate;
    std::vector<ResidualReport> records;
    bool all_pass() const;
};

// Word gate first, then the selected suites. Records come back in registry order regardless of threading.
RunResult execute(const RunConfig& cfg);

std::string report_json(const RunResult& result, int indent = 2);
std::string residual_csv(std::span<const ResidualReport> records);
// Writes <dir>/report.json and <dir>/residuals.csv.
void write_outputs(const RunResult& result, const std::filesystem::path& dir);

}  // namespace ellint
