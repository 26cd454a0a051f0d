#include <doctest.h>

#include <json.hpp>

#include "ellint/report.hpp"

using namespace ellint;

namespace {
ResidualReport record(std::string id, double residual, bool pass) {
    ResidualReport r;
    r.identity_id = std::move(id);
    r.seed = 42;
    r.residual = residual;
    r.tolerance = 1e-8;
    r.pass = pass;
    r.n_used = 128;
    return r;
}
}  // namespace

TEST_SUITE("relations") {
    TEST_CASE("sampler streams are reproducible and independent") {
        Sampler a(7, "beta"), b(7, "beta"), c(7, "beta#1"), d(8, "beta");
        for (int i = 0; i < 10; ++i) {
            const double x = a.uniform(0, 1);
            CHECK(x == b.uniform(0, 1));
            CHECK(x != c.uniform(0, 1));
            CHECK(x != d.uniform(0, 1));
            CHECK(x >= 0.0);
            CHECK(x < 1.0);
        }
        CHECK(attempt_stream("beta", 3) == "beta#3");
    }

    TEST_CASE("sampler moduli ranges") {
        Sampler s(1, "moduli");
        for (int i = 0; i < 50; ++i) {
            const Moduli m = s.moduli(0.05, 0.5, 0.1, 0.3, Regime::QGreater1);
            CHECK(std::abs(m.p()) >= 0.05 - 1e-15);
            CHECK(std::abs(m.p()) <= 0.5 + 1e-15);
            CHECK(std::abs(m.q()) > 1.0);
            CHECK(std::abs(m.q_inside()) >= 0.1 - 1e-15);
            CHECK(m.regime() == Regime::QGreater1);
        }
    }

    TEST_CASE("draw_until gives up after the attempt budget") {
        const auto [v, attempt] = draw_until<int>(1, "x", 10, [](Sampler& s) -> std::optional<int> {
            return s.uniform(0, 1) < 0.5 ? std::optional<int>(1) : std::nullopt;
        });
        CHECK(v == 1);
        CHECK(attempt < 10);
        CHECK_THROWS_AS(draw_until<int>(1, "x", 5, [](Sampler&) { return std::optional<int>{}; }), SamplerExhausted);
    }

    TEST_CASE("beta suite and its control") {
        RunContext ctx;
        ctx.seed = 7;
        const auto ok = run_suite(*find_suite("beta"), ctx);
        CHECK(ok.pass);
        CHECK(ok.residual <= 1e-8);
        CHECK(ok.seed == 7);
        CHECK(ok.n_used == 128);
        const auto control = run_suite(*find_suite("beta_control"), ctx);
        CHECK(control.pass);
        CHECK(control.residual > 1e-3);
        // A tolerance override does not move a control's threshold.
        ctx.tolerance = 1.0;
        CHECK(run_suite(*find_suite("beta_control"), ctx).tolerance == 1e-3);
        CHECK(run_suite(*find_suite("beta"), ctx).tolerance == 1.0);
    }

    TEST_CASE("beta draws are identical across runs") {
        DrawLog a, b;
        CHECK(check_beta_integral(99, Regime::QLess1, 64, false, &a) == check_beta_integral(99, Regime::QLess1, 64, false, &b));
        CHECK(a.take() == b.take());
    }

    TEST_CASE("registry order follows module dependencies") {
        int last = 0;
        for (const Suite& s : suite_registry()) {
            CHECK(static_cast<int>(s.module) >= last);
            last = static_cast<int>(s.module);
            CHECK(s.tolerance > 0);
            CHECK(find_suite(s.id) == &s);
        }
    }

    TEST_CASE("CSV layout") {
        CHECK(residual_csv({}) == "identity_id,seed,residual,tolerance,pass,N,runtime_ms\n");
        const std::vector<ResidualReport> rs{record("a", 1.5e-12, true), record("b", 0.25, false),
                                             record("c", std::numeric_limits<double>::infinity(), false)};
        const std::string csv = residual_csv(rs);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
        CHECK(csv.find("a,42,1.5e-12,1e-08,true,128,0\n") != std::string::npos);
        CHECK(csv.find("c,42,inf,1e-08,false,128,0\n") != std::string::npos);
    }

    TEST_CASE("JSON report") {
        RunResult empty;
        empty.gate.pass = true;
        const auto j = nlohmann::json::parse(report_json(empty));
        CHECK(j["records"].empty());
        CHECK(j["all_pass"] == true);

        RunResult one;
        one.gate.pass = true;
        one.records = {record("beta", std::nan(""), false)};
        one.records[0].draw = {{"t1", "0.5+0.1i"}};
        const auto k = nlohmann::json::parse(report_json(one));
        const auto& r = k["records"][0];
        for (const char* key : {"identity_id", "anchor", "seed", "draw", "residual", "tolerance", "pass", "N_used",
                                "runtime_ms"})
            CHECK(r.contains(key));
        CHECK(r["residual"] == "nan");
        CHECK(r["draw"]["t1"] == "0.5+0.1i");
    }

    TEST_CASE("config parsing") {
        const auto c = config_from_json(R"({"suite": ["beta", "theta_modular"], "seed": "0xE11157", "tol": 1e-6,
                                            "grid": 64, "regime": "QGreater1", "reproducible": true})");
        CHECK(c.suites.size() == 2);
        CHECK(c.seed == 0xE11157);
        CHECK(c.tolerance == 1e-6);
        CHECK(c.grid == 64);
        CHECK(c.regime == Regime::QGreater1);
        CHECK(config_from_json(R"({"seed": 7, "suite": "beta"})").suites == std::vector<std::string>{"beta"});
        CHECK_THROWS_AS(config_from_json(R"({"sede": 7})"), ConfigError);
        CHECK_THROWS_AS(config_from_json(R"({"seed": -1})"), ConfigError);
        CHECK_THROWS_AS(config_from_json(R"({"regime": "sideways"})"), ConfigError);
        CHECK_THROWS_AS(config_from_json("[1,2"), ConfigError);
        RunConfig bad;
        bad.tolerance = 0.0;
        CHECK_THROWS_AS(validate(bad), ConfigError);
        CHECK(parse_seed("17") == 17);
        CHECK_THROWS_AS(parse_seed("17x"), ConfigError);
    }

    TEST_CASE("suite selection by regime") {
        RunConfig c;
        c.suites = {"rll", "beta"};
        c.regime = Regime::QGreater1;
        const auto sel = select_suites(c);
        REQUIRE(sel.suites.size() == 1);
        CHECK(sel.suites[0]->id == "beta");
        CHECK(sel.skipped == std::vector<std::string>{"rll"});
        c.suites = {"missing"};
        CHECK_THROWS_AS(select_suites(c), ConfigError);
    }

    TEST_CASE("execute is deterministic in reproducible mode") {
        RunConfig c;
        c.suites = {"beta", "beta_control", "theta_duplication"};
        c.seed = 5;
        c.reproducible = true;
        const auto a = execute(c), b = execute(c);
        CHECK(a.all_pass());
        CHECK(residual_csv(a.records) == residual_csv(b.records));
        CHECK(a.records.size() == 3);
        CHECK(a.records[0].identity_id == "theta_duplication");
    }
}
