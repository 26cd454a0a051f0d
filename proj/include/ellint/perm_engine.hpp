#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ellint/core.hpp"

namespace ellint::perm {

// Generator indices, leftmost first; s_i swaps tuple positions i and i+1 (1-based).
using Word = std::vector<int>;

Word parse_word(std::string_view text);  // "s2s3s1s2", "2 3 1 2" or "S2 S3"
std::string format_word(const Word& w);

// Highest tuple position a word touches.
int required_arity(const Word& w);

// Right-to-left action: act(s_a s_b, u) = s_a(s_b(u)).
template <class T>
std::vector<T> act(const Word& w, std::vector<T> u) {
    if (required_arity(w) > static_cast<int>(u.size()))
        throw ArityError("word " + format_word(w) + " needs " + std::to_string(required_arity(w)) + " entries");
    for (auto it = w.rbegin(); it != w.rend(); ++it) std::swap(u[*it - 1], u[*it]);
    return u;
}

// S_i with argument (left - right), where left/right are the entries the transposition exchanges.
template <class T>
struct Factor {
    int gen;
    T left;
    T right;
};

// Expansion under the convention S_j S_k := S_j(s_k u) S_k(u). Returned leftmost first.
template <class T>
std::vector<Factor<T>> expand_annotated(const Word& w, std::vector<T> u) {
    if (required_arity(w) > static_cast<int>(u.size()))
        throw ArityError("word " + format_word(w) + " needs " + std::to_string(required_arity(w)) + " entries");
    std::vector<Factor<T>> out(w.size());
    for (std::size_t i = w.size(); i-- > 0;) {
        const int g = w[i];
        out[i] = {g, u[g - 1], u[g]};
        std::swap(u[g - 1], u[g]);
    }
    return out;
}

// Image of (0, 1, ..., arity-1).
std::vector<int> permutation(const Word& w, int arity);

struct RewriteStep {
    std::string move;  // e.g. "commute@3", "braid@5"
    Word word;
};

struct WordIdentity {
    bool same_permutation = false;
    bool rewritten = false;   // reached by far-commutation and braid moves within the depth cap
    bool exhausted = false;   // the bounded search gave up
    std::vector<RewriteStep> trace;
    bool holds() const { return same_permutation && rewritten; }
};

WordIdentity verify_word_identity(const Word& lhs, const Word& rhs, int arity, int max_depth = 20);

struct ProofLink {
    std::string label;
    Word lhs;
    Word rhs;
};

Word r12_word();  // s2 s1 s3 s2
Word r23_word();  // s4 s3 s5 s4
// The chain of word identities carrying R12 R23 R12 into R23 R12 R23 on six parameters.
const std::vector<ProofLink>& ybe_proof_chain();
Word ybe_lhs();
Word ybe_rhs();

struct GateResult {
    bool pass;
    std::vector<std::pair<std::string, WordIdentity>> links;
};
// Verifies every link of the chain.
GateResult ybe_word_gate();

}  // namespace ellint::perm
