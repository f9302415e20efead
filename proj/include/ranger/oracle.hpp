#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ranger/assignment.hpp"
#include "ranger/formula.hpp"

namespace ranger {

class TooLargeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kOracleMaxVars = 25;

struct OracleResult {
    bool satisfiable = false;
    std::optional<Assignment> model;  // first model in counting order when satisfiable
};

namespace detail {

struct MaskedClause {
    std::uint32_t pos = 0, neg = 0;
};

inline std::vector<MaskedClause> mask_clauses(const Formula& f) {
    std::vector<MaskedClause> masks;
    masks.reserve(f.clauses.size());
    for (const Clause& c : f.clauses) {
        MaskedClause m;
        for (Literal l : c.literals()) {
            const std::uint32_t bit = std::uint32_t{1} << (l.var() - 1);
            if (l.isPositive()) m.pos |= bit;
            else m.neg |= bit;
        }
        masks.push_back(m);
    }
    return masks;
}

}  // namespace detail

/// Exhaustive satisfiability check for formulas of at most 25 variables.
/// Assignments are enumerated in counting order (all-false first), so the
/// returned model is deterministic.
inline OracleResult brute_force_sat(const Formula& f) {
    if (f.numVars > kOracleMaxVars)
        throw TooLargeError("brute_force_sat: more than 25 variables");

    const auto masks = detail::mask_clauses(f);
    const std::uint64_t total = std::uint64_t{1} << f.numVars;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        const auto a = static_cast<std::uint32_t>(bits);
        bool sat = true;
        for (const auto& m : masks) {
            if ((a & m.pos) == 0 && (~a & m.neg) == 0) {
                sat = false;
                break;
            }
        }
        if (sat) {
            Assignment model(f.numVars);
            for (int v = 1; v <= f.numVars; ++v)
                model.assign((a >> (v - 1)) & 1 ? Literal::positive(v) : Literal::negative(v));
            return {true, std::move(model)};
        }
    }
    return {false, std::nullopt};
}

/// True iff every total assignment satisfying f satisfies c. Both must fit
/// the oracle's variable cap.
inline bool oracle_entails(const Formula& f, const Clause& c) {
    int numVars = f.numVars;
    for (Literal l : c.literals()) numVars = std::max(numVars, l.var());
    if (numVars > kOracleMaxVars) throw TooLargeError("oracle_entails: more than 25 variables");

    const auto masks = detail::mask_clauses(f);
    detail::MaskedClause target;
    for (Literal l : c.literals()) {
        const std::uint32_t bit = std::uint32_t{1} << (l.var() - 1);
        if (l.isPositive()) target.pos |= bit;
        else target.neg |= bit;
    }

    const std::uint64_t total = std::uint64_t{1} << numVars;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        const auto a = static_cast<std::uint32_t>(bits);
        bool satF = true;
        for (const auto& m : masks) {
            if ((a & m.pos) == 0 && (~a & m.neg) == 0) {
                satF = false;
                break;
            }
        }
        if (satF && (a & target.pos) == 0 && (~a & target.neg) == 0) return false;
    }
    return true;
}

}  // namespace ranger
