// Registry entries for the integral identities and their negative controls.
#include "ellint/relations.hpp"

namespace ellint {

namespace {

using Check = std::function<double(const RunContext&, int, DrawLog*)>;

Suite make(std::string id, std::string anchor, double tol, int n, bool control, bool q_greater, Check check) {
    return {std::move(id), Module::Relations, std::move(anchor), tol, n, control, q_greater, true,
            [check = std::move(check)](const RunContext& ctx, int grid) {
                SuiteOutcome out;
                out.n_used = grid;
                out.residual = check(ctx, grid, &out.draw);
                return out;
            }};
}

// The unbalanced beta draw must miss by more than this; other controls must fail their identity's tolerance.
constexpr double kBetaControl = 1e-3;

}  // namespace

std::vector<Suite> identity_suites() {
    using C = const RunContext&;
    const auto S1 = IntertwinedSide::S1;
    const auto S3 = IntertwinedSide::S3;
    const auto Mod = GeneratorFamily::Modified;
    const auto Par = GeneratorFamily::ModularPartner;
    return {
        make("beta", "elliptic beta integral", 1e-8, 128, false, true,
             [](C c, int n, DrawLog* l) { return check_beta_integral(c.seed, c.regime, n, false, l); }),
        make("beta_control", "elliptic beta integral, unbalanced", kBetaControl, 128, true, true,
             [](C c, int n, DrawLog* l) { return check_beta_integral(c.seed, c.regime, n, true, l); }),
        make("coxeter_kernel", "cubic Coxeter relation, kernel form", 1e-8, 128, false, true,
             [](C c, int n, DrawLog* l) { return check_coxeter_kernel(c.seed, c.regime, n, false, l); }),
        make("coxeter", "cubic Coxeter relation, operator form", 1e-7, 128, false, true,
             [](C c, int n, DrawLog* l) { return check_coxeter_cubic(c.seed, c.regime, n, false, l); }),
        make("coxeter_control", "cubic Coxeter relation, shifted argument", 1e-7, 128, true, true,
             [](C c, int n, DrawLog* l) { return check_coxeter_cubic(c.seed, c.regime, n, true, l); }),
        make("bailey_str", "star-triangle relation, operator form", 1e-7, 128, false, true,
             [](C c, int n, DrawLog* l) { return check_bailey_STR(c.seed, c.regime, n, false, l); }),
        make("bailey_str_control", "star-triangle relation, shifted argument", 1e-7, 128, true, true,
             [](C c, int n, DrawLog* l) { return check_bailey_STR(c.seed, c.regime, n, true, l); }),
        make("star_triangle", "star-triangle relation, functional form", 1e-8, 128, false, true,
             [](C c, int n, DrawLog* l) { return check_star_triangle_functional(c.seed, c.regime, n, false, l); }),
        make("star_triangle_control", "star-triangle relation, broken crossing", 1e-8, 128, true, true,
             [](C c, int n, DrawLog* l) { return check_star_triangle_functional(c.seed, c.regime, n, true, l); }),
        make("inversion", "inversion of the Fourier transform", 1e-7, 128, false, true,
             [](C c, int n, DrawLog* l) { return check_inversion(c.seed, c.regime, n, false, false, l); }),
        make("inversion_weak", "inversion of the Fourier transform, weak regime", 1e-7, 128, false, true,
             [](C c, int n, DrawLog* l) { return check_inversion(c.seed, c.regime, n, true, false, l); }),
        make("inversion_control", "inversion with mismatched parameters", 1e-7, 128, true, true,
             [](C c, int n, DrawLog* l) { return check_inversion(c.seed, c.regime, n, false, true, l); }),
        make("bailey_lemma", "Bailey lemma", 1e-7, 128, false, true,
             [](C c, int n, DrawLog* l) { return check_bailey_lemma(c.seed, c.regime, n, false, l); }),
        make("bailey_lemma_control", "Bailey lemma, shifted argument", 1e-7, 128, true, true,
             [](C c, int n, DrawLog* l) { return check_bailey_lemma(c.seed, c.regime, n, true, l); }),
        make("intertwining_S1_modified", "S1 intertwines the modified generators", 1e-7, 128, false, true,
             [=](C c, int n, DrawLog* l) { return check_intertwining(c.seed, S1, Mod, c.regime, n, false, l); }),
        make("intertwining_S3_modified", "S3 intertwines the modified generators", 1e-7, 128, false, true,
             [=](C c, int n, DrawLog* l) { return check_intertwining(c.seed, S3, Mod, c.regime, n, false, l); }),
        make("intertwining_S1_partner", "S1 intertwines the modular partner", 1e-7, 128, false, true,
             [=](C c, int n, DrawLog* l) { return check_intertwining(c.seed, S1, Par, c.regime, n, false, l); }),
        make("intertwining_S3_partner", "S3 intertwines the modular partner", 1e-7, 128, false, true,
             [=](C c, int n, DrawLog* l) { return check_intertwining(c.seed, S3, Par, c.regime, n, false, l); }),
        make("intertwining_control", "intertwining without the spin flip", 1e-7, 128, true, true,
             [=](C c, int n, DrawLog* l) { return check_intertwining(c.seed, S1, Mod, c.regime, n, true, l); }),
        make("R_direct", "R operator, factorized vs explicit kernel", 1e-7, 32, false, false,
             [](C c, int n, DrawLog* l) { return check_R_direct(c.seed, n, l); }),
        make("rll", "RLL relation", 1e-6, 80, false, false,
             [](C c, int n, DrawLog* l) { return check_RLL(c.seed, false, n, false, l); }),
        make("rll_double", "RLL relation, modular partner", 1e-6, 80, false, false,
             [](C c, int n, DrawLog* l) { return check_RLL(c.seed, true, n, false, l); }),
        make("rll_control", "RLL relation, unexchanged parameters", 1e-6, 80, true, false,
             [](C c, int n, DrawLog* l) { return check_RLL(c.seed, false, n, true, l); }),
        make("ybe_words", "Yang-Baxter equation as generator words", 1e-6, 32, false, false,
             [](C c, int n, DrawLog* l) { return check_YBE_words(c.seed, n, l); }),
        make("ybe", "Yang-Baxter equation", 1e-6, 32, false, false,
             [](C c, int n, DrawLog* l) { return check_YBE(c.seed, n, false, l); }),
        make("ybe_control", "Yang-Baxter equation, shifted parameter", 1e-6, 32, true, false,
             [](C c, int n, DrawLog* l) { return check_YBE(c.seed, n, true, l); }),
    };
}

}  // namespace ellint
