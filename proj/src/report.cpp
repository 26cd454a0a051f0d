#include "ellint/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include <json.hpp>

#include "ellint/parallel.hpp"

namespace ellint {

namespace {

using json = nlohmann::ordered_json;

// Suites whose operator is assembled from generator words; a failed word gate voids their passes.
bool word_gated(std::string_view id) {
    static const std::set<std::string_view> ids{"R_structure", "R_direct", "rll",       "rll_double",
                                                "rll_control", "ybe_words", "ybe",      "ybe_control"};
    return ids.contains(id);
}

std::uint64_t seed_from_json(const json& v) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_string()) return parse_seed(v.get<std::string>());
    throw ConfigError("seed must be a non-negative integer, got " + v.dump());
}

template <class T>
T get(const json& v, const char* key) {
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("bad value for '") + key + "': " + v.dump());
    }
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    // Shortest text that round-trips.
    char buf[32];
    const auto end = std::to_chars(buf, buf + sizeof buf, v).ptr;
    return {buf, end};
}

json gate_json(const perm::GateResult& g) {
    json links = json::array();
    for (const auto& [label, id] : g.links) {
        json steps = json::array();
        for (const auto& st : id.trace) steps.push_back({{"move", st.move}, {"word", perm::format_word(st.word)}});
        links.push_back({{"label", label},
                         {"same_permutation", id.same_permutation},
                         {"rewritten", id.rewritten},
                         {"exhausted", id.exhausted},
                         {"trace", std::move(steps)}});
    }
    return {{"name", "ybe_word_chain"}, {"pass", g.pass}, {"links", std::move(links)}};
}

json record_json(const ResidualReport& r) {
    json draw = json::object();
    for (const auto& [k, v] : r.draw) draw[k] = v;
    json residual = std::isfinite(r.residual) ? json(r.residual) : json(format_double(r.residual));
    return {{"identity_id", r.identity_id}, {"anchor", r.anchor},     {"seed", r.seed},
            {"draw", std::move(draw)},      {"residual", residual},   {"tolerance", r.tolerance},
            {"pass", r.pass},               {"N_used", r.n_used},     {"runtime_ms", r.runtime_ms}};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << text;
    if (!f.flush()) throw IoError("write failed: " + path.string());
}

}  // namespace

std::uint64_t parse_seed(std::string_view text) {
    const std::string s(text);
    if (!s.empty() && s.front() != '-') {
        try {
            std::size_t used = 0;
            const auto seed = std::stoull(s, &used, 0);
            if (used == s.size()) return seed;
        } catch (const std::exception&) {
        }
    }
    throw ConfigError("seed must be a non-negative integer, got '" + s + "'");
}

RunConfig config_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig c;
    for (const auto& [key, v] : j.items()) {
        if (key == "suite") {
            c.suites = v.is_string() ? std::vector<std::string>{v.get<std::string>()}
                                     : get<std::vector<std::string>>(v, "suite");
        } else if (key == "seed") {
            c.seed = seed_from_json(v);
        } else if (key == "tol") {
            c.tolerance = get<double>(v, "tol");
        } else if (key == "grid") {
            c.grid = get<int>(v, "grid");
        } else if (key == "regime") {
            try {
                c.regime = regime_from_string(get<std::string>(v, "regime"));
            } catch (const DomainError& e) {
                throw ConfigError(e.what());
            }
        } else if (key == "out") {
            c.out = get<std::string>(v, "out");
        } else if (key == "modulus_min") {
            c.modulus_min = get<double>(v, "modulus_min");
        } else if (key == "modulus_max") {
            c.modulus_max = get<double>(v, "modulus_max");
        } else if (key == "reproducible") {
            c.reproducible = get<bool>(v, "reproducible");
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    return c;
}

void validate(const RunConfig& c) {
    if (c.tolerance && !(*c.tolerance > 0)) throw ConfigError("tolerance must be positive");
    if (c.grid && *c.grid < 8) throw ConfigError("grid N must be at least 8");
    if (c.regime == Regime::QUnitCircle) throw ConfigError("suites run in QLess1 or QGreater1 only");
    if (!(c.modulus_min > 0 && c.modulus_min < c.modulus_max && c.modulus_max < 1))
        throw ConfigError("moduli range must satisfy 0 < min < max < 1");
    if (c.suites.empty()) throw ConfigError("no suites selected");
}

Selection select_suites(const RunConfig& cfg) {
    const bool all = std::ranges::find(cfg.suites, "all") != cfg.suites.end();
    for (const auto& id : cfg.suites)
        if (id != "all" && !find_suite(id)) throw ConfigError("unknown suite '" + id + "'");
    Selection sel;
    for (const Suite& s : suite_registry()) {
        const bool wanted = all || std::ranges::find(cfg.suites, s.id) != cfg.suites.end();
        if (!wanted) continue;
        const bool realized = cfg.regime == Regime::QGreater1 ? s.q_greater : s.q_less;
        if (realized)
            sel.suites.push_back(&s);
        else if (!all)
            sel.skipped.push_back(s.id);
    }
    return sel;
}

bool RunResult::all_pass() const {
    return gate.pass && std::ranges::all_of(records, &ResidualReport::pass);
}

RunResult execute(const RunConfig& cfg) {
    validate(cfg);
    const Selection sel = select_suites(cfg);
    RunContext ctx;
    ctx.seed = cfg.seed;
    ctx.regime = cfg.regime;
    ctx.grid = cfg.grid;
    ctx.tolerance = cfg.tolerance;
    ctx.modulus_min = cfg.modulus_min;
    ctx.modulus_max = cfg.modulus_max;

    RunResult out;
    out.gate = perm::ybe_word_gate();
    out.records.resize(sel.suites.size());
    parallel_for(sel.suites.size(), [&](std::size_t i) { out.records[i] = run_suite(*sel.suites[i], ctx); });
    for (ResidualReport& r : out.records) {
        if (cfg.reproducible) r.runtime_ms = 0;
        if (!out.gate.pass && word_gated(r.identity_id)) {
            r.pass = false;
            r.draw.emplace_back("gate", "word identity failed");
        }
    }
    return out;
}

std::string report_json(const RunResult& result, int indent) {
    json records = json::array();
    for (const auto& r : result.records) records.push_back(record_json(r));
    const json doc{{"gates", json::array({gate_json(result.gate)})},
                   {"records", std::move(records)},
                   {"all_pass", result.all_pass()}};
    return doc.dump(indent) + "\n";
}

std::string residual_csv(std::span<const ResidualReport> records) {
    std::string s = "identity_id,seed,residual,tolerance,pass,N,runtime_ms\n";
    for (const auto& r : records) {
        s += r.identity_id + ',' + std::to_string(r.seed) + ',' + format_double(r.residual) + ',' +
             format_double(r.tolerance) + ',' + (r.pass ? "true" : "false") + ',' + std::to_string(r.n_used) + ',' +
             std::to_string(r.runtime_ms) + '\n';
    }
    return s;
}

void write_outputs(const RunResult& result, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    write_file(dir / "report.json", report_json(result));
    write_file(dir / "residuals.csv", residual_csv(result.records));
}

}  // namespace ellint
