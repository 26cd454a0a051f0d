#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ellint/perm_engine.hpp"
#include "ellint/report.hpp"
#include "ellint/special_fn.hpp"

namespace py = pybind11;
using namespace ellint;

namespace {

py::dict to_dict(const ResidualReport& r) {
    py::dict draw;
    for (const auto& [k, v] : r.draw) draw[py::str(k)] = v;
    py::dict d;
    d["identity_id"] = r.identity_id;
    d["anchor"] = r.anchor;
    d["seed"] = r.seed;
    d["draw"] = draw;
    d["residual"] = r.residual;
    d["tolerance"] = r.tolerance;
    d["pass"] = r.pass;
    d["N_used"] = r.n_used;
    d["runtime_ms"] = r.runtime_ms;
    return d;
}

RunConfig make_config(const std::vector<std::string>& suites, std::uint64_t seed, const std::string& regime,
                      std::optional<int> grid, std::optional<double> tol, bool reproducible) {
    RunConfig c;
    c.suites = suites;
    c.seed = seed;
    c.regime = regime_from_string(regime);
    c.grid = grid;
    c.tolerance = tol;
    c.reproducible = reproducible;
    return c;
}

}  // namespace

PYBIND11_MODULE(_ellint, m) {
    m.doc() = "Elliptic special functions and identity-verification suites";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ArityError>(m, "ArityError", PyExc_ValueError);

    m.def("qpochhammer", &qpochhammer, py::arg("x"), py::arg("q"));
    m.def("theta", &theta_mult, py::arg("t"), py::arg("p"));
    m.def("jacobi_theta", &jacobi_theta, py::arg("j"), py::arg("z"), py::arg("tau"));
    m.def("elliptic_gamma", &elliptic_gamma, py::arg("t"), py::arg("p"), py::arg("q"));

    m.def("act", [](const std::string& word, std::vector<std::string> u) { return perm::act(perm::parse_word(word), u); },
          py::arg("word"), py::arg("values"));
    m.def(
        "word_identity",
        [](const std::string& lhs, const std::string& rhs, int arity) {
            return perm::verify_word_identity(perm::parse_word(lhs), perm::parse_word(rhs), arity).holds();
        },
        py::arg("lhs"), py::arg("rhs"), py::arg("arity"));
    m.def("word_gate", [] { return perm::ybe_word_gate().pass; });

    m.def("suites", [] {
        py::list out;
        for (const Suite& s : suite_registry()) {
            py::dict d;
            d["id"] = s.id;
            d["module"] = to_string(s.module);
            d["anchor"] = s.anchor;
            d["tolerance"] = s.tolerance;
            d["control"] = s.control;
            d["q_greater"] = s.q_greater;
            out.append(d);
        }
        return out;
    });

    m.def(
        "run",
        [](const std::vector<std::string>& suites, std::uint64_t seed, const std::string& regime,
           std::optional<int> grid, std::optional<double> tol, bool reproducible) {
            const auto cfg = make_config(suites, seed, regime, grid, tol, reproducible);
            RunResult r;
            {
                py::gil_scoped_release release;
                r = execute(cfg);
            }
            py::list records;
            for (const auto& rec : r.records) records.append(to_dict(rec));
            py::dict out;
            out["gate"] = r.gate.pass;
            out["records"] = records;
            out["all_pass"] = r.all_pass();
            out["csv"] = residual_csv(r.records);
            out["json"] = report_json(r);
            return out;
        },
        py::arg("suites") = std::vector<std::string>{"all"}, py::arg("seed") = 0xE11157ULL,
        py::arg("regime") = "QLess1", py::arg("grid") = std::nullopt, py::arg("tol") = std::nullopt,
        py::arg("reproducible") = false);
}
