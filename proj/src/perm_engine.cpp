#include "ellint/perm_engine.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <optional>
#include <tuple>
#include <unordered_map>

namespace ellint::perm {

Word parse_word(std::string_view text) {
    Word w;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
            if (c != 's' && c != ' ' && c != '.' && c != ',' && c != '*')
                throw ArityError(std::string("unexpected character in word: ") + text[i]);
            continue;
        }
        int g = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) g = 10 * g + (text[i++] - '0');
        --i;
        if (g < 1) throw ArityError("generator index must be >= 1");
        w.push_back(g);
    }
    return w;
}

std::string format_word(const Word& w) {
    std::string s;
    for (int g : w) s += "s" + std::to_string(g);
    return s.empty() ? "e" : s;
}

int required_arity(const Word& w) { return w.empty() ? 0 : *std::max_element(w.begin(), w.end()) + 1; }

std::vector<int> permutation(const Word& w, int arity) {
    std::vector<int> u(arity);
    std::iota(u.begin(), u.end(), 0);
    return act(w, std::move(u));
}

namespace {

std::string key(const Word& w) { return {w.begin(), w.end()}; }

// All words one far-commutation or braid move away.
std::vector<RewriteStep> neighbours(const Word& w) {
    std::vector<RewriteStep> out;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (std::abs(w[i] - w[i + 1]) >= 2) {
            Word v = w;
            std::swap(v[i], v[i + 1]);
            out.push_back({"commute@" + std::to_string(i + 1), std::move(v)});
        }
        if (i + 2 < w.size() && w[i] == w[i + 2] && std::abs(w[i] - w[i + 1]) == 1) {
            Word v = w;
            v[i] = v[i + 2] = w[i + 1];
            v[i + 1] = w[i];
            out.push_back({"braid@" + std::to_string(i + 1), std::move(v)});
        }
    }
    return out;
}

struct Visit {
    std::string parent;
    std::string move;
    int depth;
};

}  // namespace

WordIdentity verify_word_identity(const Word& lhs, const Word& rhs, int arity, int max_depth) {
    WordIdentity result;
    result.same_permutation = permutation(lhs, arity) == permutation(rhs, arity);
    if (!result.same_permutation || lhs.size() != rhs.size()) return result;

    // Bidirectional breadth-first search; both move types are involutions, so the backward
    // half uses the same neighbour relation.
    std::unordered_map<std::string, Visit> seen[2];
    std::deque<Word> frontier[2];
    seen[0][key(lhs)] = {"", "", 0};
    seen[1][key(rhs)] = {"", "", 0};
    frontier[0].push_back(lhs);
    frontier[1].push_back(rhs);
    std::optional<std::string> meet;
    if (key(lhs) == key(rhs)) meet = key(lhs);
    int depth[2] = {0, 0};
    while (!meet && depth[0] + depth[1] < max_depth && (!frontier[0].empty() || !frontier[1].empty())) {
        const int side = frontier[0].size() <= frontier[1].size() && !frontier[0].empty() ? 0 : 1;
        std::deque<Word> next;
        for (const Word& w : frontier[side]) {
            const std::string wk = key(w);
            const int d = seen[side][wk].depth;
            for (auto& step : neighbours(w)) {
                const std::string k = key(step.word);
                if (seen[side].contains(k)) continue;
                seen[side][k] = {wk, step.move, d + 1};
                if (seen[1 - side].contains(k)) {
                    meet = k;
                    break;
                }
                next.push_back(std::move(step.word));
            }
            if (meet) break;
        }
        frontier[side] = std::move(next);
        ++depth[side];
    }
    if (!meet) {
        result.exhausted = true;
        return result;
    }
    result.rewritten = true;

    auto to_word = [](const std::string& k) { return Word(k.begin(), k.end()); };
    std::vector<RewriteStep> forward;
    for (std::string k = *meet; !seen[0][k].parent.empty(); k = seen[0][k].parent)
        forward.push_back({seen[0][k].move, to_word(k)});
    std::reverse(forward.begin(), forward.end());
    result.trace.push_back({"start", lhs});
    result.trace.insert(result.trace.end(), forward.begin(), forward.end());
    for (std::string k = *meet; !seen[1][k].parent.empty(); k = seen[1][k].parent)
        result.trace.push_back({seen[1][k].move, to_word(seen[1][k].parent)});
    return result;
}

Word r12_word() { return {2, 1, 3, 2}; }
Word r23_word() { return {4, 3, 5, 4}; }

const std::vector<ProofLink>& ybe_proof_chain() {
    static const std::vector<ProofLink> chain = {
        {"first identity", parse_word("s2s3s1s2 s4s3s5s4 s2s1s3s2"), parse_word("s2s3s4s1 s3s2s3 s1s5s4s3s2")},
        {"first to second", parse_word("s2s3s4s1 s3s2s3 s1s5s4s3s2"), parse_word("s2s3s4s3 s2s1s2 s5s3s4s3s2")},
        {"second identity", parse_word("s2s3s4s3 s2s1s2 s5s3s4s3s2"), parse_word("s4s2s3s2 s4s1s5s4 s2s3s2s4")},
        {"second to third", parse_word("s4s2s3s2 s4s1s5s4 s2s3s2s4"), parse_word("s4s3s2s3 s1s5s4s5 s3s2s3s4")},
        {"third identity", parse_word("s4s3s2s3 s1s5s4s5 s3s2s3s4"), parse_word("s4s3s5s4 s2s1s3s2 s4s3s5s4")},
    };
    return chain;
}

Word ybe_lhs() { return ybe_proof_chain().front().lhs; }
Word ybe_rhs() { return ybe_proof_chain().back().rhs; }

GateResult ybe_word_gate() {
    GateResult gate{true, {}};
    for (const auto& link : ybe_proof_chain()) {
        auto id = verify_word_identity(link.lhs, link.rhs, 6);
        gate.pass = gate.pass && id.holds();
        gate.links.emplace_back(link.label, std::move(id));
    }
    // The chain must start at R12 R23 R12 and end at R23 R12 R23.
    Word lhs, rhs;
    for (const Word& part : {r12_word(), r23_word(), r12_word()}) lhs.insert(lhs.end(), part.begin(), part.end());
    for (const Word& part : {r23_word(), r12_word(), r23_word()}) rhs.insert(rhs.end(), part.begin(), part.end());
    for (auto [label, a, b] : {std::tuple{"start is R12 R23 R12", lhs, ybe_lhs()},
                               std::tuple{"end is R23 R12 R23", ybe_rhs(), rhs}}) {
        auto id = verify_word_identity(a, b, 6);
        gate.pass = gate.pass && id.holds();
        gate.links.emplace_back(label, std::move(id));
    }
    return gate;
}

}  // namespace ellint::perm
