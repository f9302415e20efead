#pragma once

#include <cstddef>
#include <stdexcept>

#include "ranger/formula.hpp"
#include "ranger/rng.hpp"

namespace ranger {

class InvalidSizeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Uniform random 3-SAT: each clause is three literals drawn uniformly from
/// the 2n possible ones; a candidate clause containing a repeated literal or
/// a literal and its negation is discarded and redrawn whole, which keeps the
/// distribution uniform over valid clauses. Requires n >= 3.
inline Formula generate_uniform_3sat(int numVars, std::size_t numClauses, RandomSource& rng) {
    if (numVars < 3)
        throw InvalidSizeError("generate_uniform_3sat: need at least 3 variables");

    Formula f;
    f.numVars = numVars;
    f.clauses.reserve(numClauses);
    const std::uint64_t literalCount = 2 * static_cast<std::uint64_t>(numVars);

    while (f.clauses.size() < numClauses) {
        Literal lits[3];
        for (int i = 0; i < 3; ++i) {
            std::uint64_t code = rng.below(literalCount);
            int var = static_cast<int>(code / 2) + 1;
            lits[i] = (code & 1) ? Literal::negative(var) : Literal::positive(var);
        }
        if (lits[0].var() == lits[1].var() || lits[0].var() == lits[2].var() ||
            lits[1].var() == lits[2].var())
            continue;
        f.clauses.push_back(Clause{lits[0], lits[1], lits[2]});
    }
    return f;
}

}  // namespace ranger
