#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ranger/literal.hpp"
#include "ranger/rng.hpp"

namespace ranger {

/// Thrown by resolve() when the pivot does not occur with opposite
/// polarities in the two clauses.
class NoPivotError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A clause: a sorted, duplicate-free disjunction of literals. Width 0 is the
/// empty clause. A clause may contain a variable with both polarities (such
/// clauses are tautologies and can appear in input files); construction only
/// collapses exact duplicates.
class Clause {
public:
    Clause() = default;

    Clause(std::initializer_list<Literal> lits) : Clause(std::vector<Literal>(lits)) {}

    explicit Clause(std::vector<Literal> lits) : lits_(std::move(lits)) { normalize(); }

    /// Build from DIMACS-style signed integers, e.g. fromEncoded({1, -2}).
    static Clause fromEncoded(std::initializer_list<int> encoded) {
        std::vector<Literal> lits;
        lits.reserve(encoded.size());
        for (int e : encoded) lits.push_back(Literal(e));
        return Clause(std::move(lits));
    }

    std::size_t width() const { return lits_.size(); }
    bool empty() const { return lits_.empty(); }
    std::span<const Literal> literals() const { return lits_; }

    bool contains(Literal l) const { return std::binary_search(lits_.begin(), lits_.end(), l); }

    /// 64-bit membership signature; used as a subset-test prefilter.
    std::uint64_t signature() const { return sig_; }

    void removeLiteral(Literal l) {
        auto it = std::lower_bound(lits_.begin(), lits_.end(), l);
        if (it != lits_.end() && *it == l) lits_.erase(it);
        recomputeSignature();
    }

    auto begin() const { return lits_.begin(); }
    auto end() const { return lits_.end(); }

    friend bool operator==(const Clause& a, const Clause& b) { return a.lits_ == b.lits_; }

private:
    void normalize() {
        std::sort(lits_.begin(), lits_.end());
        lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
        recomputeSignature();
    }

    void recomputeSignature() {
        sig_ = 0;
        for (Literal l : lits_) sig_ |= std::uint64_t{1} << (l.index() % 64);
    }

    std::vector<Literal> lits_;
    std::uint64_t sig_ = 0;
};

/// True iff some variable occurs with both polarities in c.
inline bool is_tautology(const Clause& c) {
    auto lits = c.literals();
    for (std::size_t i = 1; i < lits.size(); ++i)
        if (lits[i].var() == lits[i - 1].var()) return true;
    return false;
}

/// True iff every literal of c occurs in other (non-strict subset).
inline bool subsumes(const Clause& c, const Clause& other) {
    if (c.width() > other.width()) return false;
    if (c.signature() & ~other.signature()) return false;
    auto a = c.literals();
    auto b = other.literals();
    std::size_t j = 0;
    for (Literal l : a) {
        while (j < b.size() && b[j] < l) ++j;
        if (j == b.size() || !(b[j] == l)) return false;
        ++j;
    }
    return true;
}

/// Proper-subset subsumption; equal clauses do not strictly subsume each other.
inline bool strictly_subsumes(const Clause& c, const Clause& other) {
    return c.width() < other.width() && subsumes(c, other);
}

/// Variables occurring with opposite polarities in c1 and c2, ascending.
inline std::vector<int> complementary_vars(const Clause& c1, const Clause& c2) {
    std::vector<int> vars;
    for (Literal l : c1.literals())
        if (c2.contains(l.negated())) vars.push_back(l.var());
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

/// Resolve c1 and c2 on pivotVar. Returns the resolvent, or nullopt when the
/// resolvent is a tautology. Throws NoPivotError when pivotVar does not occur
/// with opposite polarities in the two clauses.
inline std::optional<Clause> resolve(const Clause& c1, const Clause& c2, int pivotVar) {
    const Literal pos = Literal::positive(pivotVar);
    const Literal neg = Literal::negative(pivotVar);

    Literal fromC1, fromC2;
    if (c1.contains(pos) && c2.contains(neg)) {
        fromC1 = pos;
        fromC2 = neg;
    } else if (c1.contains(neg) && c2.contains(pos)) {
        fromC1 = neg;
        fromC2 = pos;
    } else {
        throw NoPivotError("resolve: pivot variable does not occur with opposite polarities");
    }

    std::vector<Literal> merged;
    merged.reserve(c1.width() + c2.width());
    for (Literal l : c1.literals())
        if (!(l == fromC1)) merged.push_back(l);
    for (Literal l : c2.literals())
        if (!(l == fromC2)) merged.push_back(l);

    Clause r(std::move(merged));
    if (is_tautology(r)) return std::nullopt;
    return r;
}

/// A uniformly random variable among those occurring with opposite polarities
/// in c1 and c2, or nullopt when no such variable exists.
inline std::optional<int> pick_pivot(const Clause& c1, const Clause& c2, RandomSource& rng) {
    std::vector<int> vars = complementary_vars(c1, c2);
    if (vars.empty()) return std::nullopt;
    return vars[rng.index(vars.size())];
}

}  // namespace ranger
