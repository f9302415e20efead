#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>

#include "ranger/clause.hpp"
#include "ranger/formula.hpp"
#include "ranger/solver_state.hpp"

namespace ranger {

class ClauseTooShortError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DegeneratePairError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Weight a clause of the given length contributes to each literal pair it
/// contains: 2^(-len) / (len * (len - 1)). Short clauses weigh more. The
/// clause-independent constant factor 2^(n-1) of the unnormalized weight is
/// dropped; every downstream use is a comparison of sums, so orderings are
/// unchanged and the value stays representable for any clause length.
inline double pair_weight(std::size_t clauseLen) {
    if (clauseLen < 2)
        throw ClauseTooShortError("pair_weight: a clause shorter than 2 has no literal pair");
    const double len = static_cast<double>(clauseLen);
    return std::ldexp(1.0, -static_cast<int>(clauseLen)) / (len * (len - 1.0));
}

/// Accumulated pair-of-literals scores: S(l1, l2) is the sum of pair_weight
/// over all clauses containing both literals.
struct ScoreTable {
    std::unordered_map<LiteralPair, double, LiteralPairHash> pairScores;
    std::uint64_t builtAtIteration = 0;

    double score(const LiteralPair& p) const {
        auto it = pairScores.find(p);
        return it == pairScores.end() ? 0.0 : it->second;
    }
    double score(Literal a, Literal b) const { return score(LiteralPair(a, b)); }
};

inline ScoreTable compute_pair_scores(std::span<const Clause> clauses,
                                      std::span<const Clause> extra = {}) {
    ScoreTable table;
    auto accumulate = [&](std::span<const Clause> range) {
        for (const Clause& c : range) {
            if (c.width() < 2) continue;
            const double w = pair_weight(c.width());
            auto lits = c.literals();
            for (std::size_t i = 0; i < lits.size(); ++i)
                for (std::size_t j = i + 1; j < lits.size(); ++j)
                    table.pairScores[LiteralPair(lits[i], lits[j])] += w;
        }
    };
    accumulate(clauses);
    accumulate(extra);
    return table;
}

inline ScoreTable compute_pair_scores(const Formula& f) {
    return compute_pair_scores(f.clauses);
}

/// Sum of the scores of all literal pairs the clause contains. Pairs absent
/// from the table contribute 0.
inline double clause_score(const Clause& c, const ScoreTable& t) {
    if (c.width() < 2)
        throw ClauseTooShortError("clause_score: a clause shorter than 2 has no literal pair");
    double total = 0.0;
    auto lits = c.literals();
    for (std::size_t i = 0; i < lits.size(); ++i)
        for (std::size_t j = i + 1; j < lits.size(); ++j)
            total += t.score(lits[i], lits[j]);
    return total;
}

/// Score of a quadruplet (two disjoint literal pairs): the sum of the squares
/// of the two pair scores. The four literals must be over pairwise distinct
/// variables.
inline double quadruplet_score(const LiteralPair& a, const LiteralPair& b, const ScoreTable& t) {
    const int vars[4] = {a.first.var(), a.second.var(), b.first.var(), b.second.var()};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (vars[i] == vars[j])
                throw DegeneratePairError("quadruplet_score: pairs share a variable");
    const double sa = t.score(a);
    const double sb = t.score(b);
    return sa * sa + sb * sb;
}

}  // namespace ranger
