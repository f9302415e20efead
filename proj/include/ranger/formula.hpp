#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "ranger/clause.hpp"
#include "ranger/literal.hpp"

namespace ranger {

/// A conjunction of clauses over variables 1..numVars. Clauses form a
/// multiset: duplicates are allowed and order is meaningful only for
/// reproducibility. numVars may exceed the variables actually mentioned
/// (DIMACS headers may declare unused variables) and grows when extension
/// variables are introduced.
struct Formula {
    std::vector<Clause> clauses;
    int numVars = 0;

    std::size_t numClauses() const { return clauses.size(); }

    void addClause(Clause c) {
        for (Literal l : c.literals()) numVars = std::max(numVars, l.var());
        clauses.push_back(std::move(c));
    }

    bool containsClause(const Clause& c) const {
        return std::find(clauses.begin(), clauses.end(), c) != clauses.end();
    }
};

/// Every literal occurring in the given clause ranges whose negation occurs
/// in none of them, ascending. numVars bounds the variable indices.
inline std::vector<Literal> pure_literals(std::span<const Clause> clauses,
                                          std::span<const Clause> extra, int numVars) {
    std::vector<std::uint8_t> seen(2 * static_cast<std::size_t>(numVars), 0);
    auto scan = [&](std::span<const Clause> range) {
        for (const Clause& c : range)
            for (Literal l : c.literals()) seen[l.index()] = 1;
    };
    scan(clauses);
    scan(extra);

    std::vector<Literal> pures;
    for (int v = 1; v <= numVars; ++v) {
        Literal pos = Literal::positive(v);
        Literal neg = Literal::negative(v);
        bool hasPos = seen[pos.index()];
        bool hasNeg = seen[neg.index()];
        if (hasPos && !hasNeg) pures.push_back(pos);
        if (hasNeg && !hasPos) pures.push_back(neg);
    }
    return pures;
}

inline std::vector<Literal> pure_literals(const Formula& f) {
    return pure_literals(f.clauses, {}, f.numVars);
}

}  // namespace ranger
