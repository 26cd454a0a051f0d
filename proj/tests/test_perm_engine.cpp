#include <doctest.h>

#include <numeric>
#include <string>

#include "ellint/perm_engine.hpp"
#include "ellint/relations.hpp"

using namespace ellint;
using perm::Word;

namespace {
const std::vector<std::string> kU{"u1", "u2", "v1", "v2"};
const std::vector<std::string> kU6{"u1", "u2", "v1", "v2", "w1", "w2"};

std::string annotated(const Word& w, const std::vector<std::string>& u) {
    std::string s;
    for (const auto& f : perm::expand_annotated(w, u)) s += "S" + std::to_string(f.gen) + "(" + f.left + "-" + f.right + ")";
    return s;
}
}  // namespace

TEST_SUITE("perm_engine") {
    TEST_CASE("parsing and formatting") {
        CHECK(perm::parse_word("s2s1s3s2") == Word{2, 1, 3, 2});
        CHECK(perm::parse_word("2 1 3 2") == Word{2, 1, 3, 2});
        CHECK(perm::parse_word("S2 S1") == Word{2, 1});
        CHECK(perm::format_word({4, 3, 5, 4}) == "s4s3s5s4");
    }

    TEST_CASE("action") {
        CHECK(perm::act(perm::r12_word(), kU) == std::vector<std::string>{"v1", "v2", "u1", "u2"});
        CHECK(perm::act(Word{1, 1}, kU) == kU);
        CHECK(perm::act(Word{1, 3}, kU) == perm::act(Word{3, 1}, kU));
        CHECK_THROWS_AS(perm::act(Word{4}, kU), ArityError);
    }

    TEST_CASE("action is a group action") {
        Sampler s(3, "perm-group-action");
        auto random_word = [&](int len) {
            Word w(len);
            for (int& g : w) g = 1 + static_cast<int>(s.uniform(0, 5));
            return w;
        };
        for (int i = 0; i < 100; ++i) {
            const Word a = random_word(6), b = random_word(5);
            Word ab = a;
            ab.insert(ab.end(), b.begin(), b.end());
            CHECK(perm::act(ab, kU6) == perm::act(a, perm::act(b, kU6)));
        }
    }

    TEST_CASE("annotated expansion") {
        CHECK(annotated(perm::r12_word(), kU) == "S2(u1-v2)S1(u1-v1)S3(u2-v2)S2(u2-v1)");
        CHECK(annotated(perm::r23_word(), kU6) == "S4(v1-w2)S3(v1-w1)S5(v2-w2)S4(v2-w1)");
        CHECK(perm::expand_annotated(Word{}, kU).empty());
        CHECK_THROWS_AS(perm::expand_annotated(Word{5}, kU), ArityError);
    }

    TEST_CASE("word identities") {
        const auto first = perm::verify_word_identity(perm::parse_word("s2s3s1s2s4s3s5s4s2s1s3s2"),
                                                      perm::parse_word("s2s3s4s1s3s2s3s1s5s4s3s2"), 6);
        CHECK(first.holds());
        CHECK(first.trace.size() > 1);
        CHECK(perm::verify_word_identity({1, 2, 1}, {2, 1, 2}, 3).holds());
        const auto bad = perm::verify_word_identity({1, 2}, {2, 1}, 3);
        CHECK_FALSE(bad.same_permutation);
        CHECK_FALSE(bad.holds());
    }

    TEST_CASE("chain gate") {
        const auto gate = perm::ybe_word_gate();
        CHECK(gate.pass);
        CHECK(perm::permutation(perm::ybe_lhs(), 6) == perm::permutation(perm::ybe_rhs(), 6));
        for (const auto& [label, id] : gate.links) CHECK_MESSAGE(id.holds(), label);
    }
}
