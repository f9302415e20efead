#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ranger/assignment.hpp"
#include "ranger/clause.hpp"
#include "ranger/formula.hpp"
#include "ranger/rng.hpp"

namespace ranger {

enum class Verdict { Unsatisfiable, Satisfiable, Unknown };

enum class DecidedBy { EmptyClause, UplaConflictExhaustion, UplaSolution, Timeout, StepLimit };

inline std::string verdict_token(Verdict v) {
    switch (v) {
        case Verdict::Unsatisfiable: return "UNSATISFIABLE";
        case Verdict::Satisfiable: return "SATISFIABLE";
        case Verdict::Unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

inline Verdict parse_verdict(const std::string& token) {
    if (token == "UNSATISFIABLE") return Verdict::Unsatisfiable;
    if (token == "SATISFIABLE") return Verdict::Satisfiable;
    if (token == "UNKNOWN") return Verdict::Unknown;
    throw std::invalid_argument("unknown verdict '" + token + "'");
}

inline std::string decided_by_token(DecidedBy d) {
    switch (d) {
        case DecidedBy::EmptyClause: return "EmptyClause";
        case DecidedBy::UplaConflictExhaustion: return "UplaConflictExhaustion";
        case DecidedBy::UplaSolution: return "UplaSolution";
        case DecidedBy::Timeout: return "Timeout";
        case DecidedBy::StepLimit: return "StepLimit";
    }
    return "StepLimit";
}

/// A decision reached mid-run together with the event that produced it.
struct Certificate {
    Verdict verdict = Verdict::Unknown;
    DecidedBy decidedBy = DecidedBy::StepLimit;
    std::optional<Assignment> model;  // present for Satisfiable
};

struct RunResult {
    Verdict verdict = Verdict::Unknown;
    std::uint64_t iterations = 0;
    double elapsedSecs = 0.0;
    DecidedBy decidedBy = DecidedBy::StepLimit;
    std::optional<Assignment> model;
};

/// An unordered pair of literals in canonical (sorted) form.
struct LiteralPair {
    Literal first{}, second{};

    LiteralPair() = default;
    LiteralPair(Literal a, Literal b) {
        if (b < a) std::swap(a, b);
        first = a;
        second = b;
    }

    friend bool operator==(const LiteralPair&, const LiteralPair&) = default;
    friend std::strong_ordering operator<=>(const LiteralPair&, const LiteralPair&) = default;
};

struct LiteralPairHash {
    std::size_t operator()(const LiteralPair& p) const noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.first.encoded()));
        h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(
                static_cast<std::uint32_t>(p.second.encoded()));
        return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ull);
    }
};

using FailureCounters = std::unordered_map<LiteralPair, int, LiteralPairHash>;

/// All per-run solver state. `phi` is the base formula and grows under
/// look-ahead and extension; `working` is the fixed-size live multiset the
/// resolution walk operates on. `fixed` records permanently forced literals
/// already applied to phi, so phi's width-1 clauses and `fixed` agree.
struct SolverState {
    Formula phi;
    Assignment fixed;
    std::vector<Clause> working;
    RandomSource rng;
    std::uint64_t iteration = 0;
    std::uint64_t tryIndex = 0;
    FailureCounters failCounters;
    bool pairProbeDone = false;
    Formula original;
    int originalNumVars = 0;
    std::optional<Certificate> certificate;
    bool emptyInWorking = false;

    // Subsumption-sweep bookkeeping: which working slots changed since the
    // last sweep, and whether phi was structurally edited (not just appended).
    std::vector<std::uint8_t> slotChanged;
    bool phiMutated = true;
    std::size_t sweptPhiSize = 0;

    explicit SolverState(std::uint64_t seed = 1) : rng(seed) {}
};

inline SolverState make_state(const Formula& f, std::uint64_t seed) {
    SolverState s(seed);
    s.phi = f;
    s.original = f;
    s.originalNumVars = f.numVars;
    s.fixed = Assignment(f.numVars);
    return s;
}

inline void set_certificate(SolverState& s, Certificate cert) {
    if (!s.certificate) s.certificate = std::move(cert);
}

/// Place a clause into a working slot. The empty clause is never evicted;
/// placing an empty clause records the refutation.
inline void place_working(SolverState& s, std::size_t slot, Clause c) {
    if (s.working[slot].empty()) return;
    const bool nowEmpty = c.empty();
    s.working[slot] = std::move(c);
    if (slot < s.slotChanged.size()) s.slotChanged[slot] = 1;
    if (nowEmpty) {
        s.emptyInWorking = true;
        set_certificate(s, {Verdict::Unsatisfiable, DecidedBy::EmptyClause, std::nullopt});
    }
}

namespace detail {

/// Make `lit` permanently true: assign it in `fixed`, drop satisfied clauses
/// (keeping one width-1 record of the literal), shorten clauses containing
/// the negation, and cascade through any units this produces. An empty
/// clause ends the run with a refutation certificate.
inline void propagate_unit_permanent(SolverState& s, Literal unit) {
    std::vector<Literal> queue{unit};
    while (!queue.empty() && !s.certificate) {
        Literal lit = queue.back();
        queue.pop_back();
        if (s.fixed.satisfies(lit)) continue;
        if (s.fixed.falsifies(lit)) {
            s.phi.clauses.push_back(Clause{});
            s.phiMutated = true;
            set_certificate(s, {Verdict::Unsatisfiable, DecidedBy::EmptyClause, std::nullopt});
            return;
        }
        s.fixed.assign(lit);
        s.phiMutated = true;

        bool keptUnit = false;
        std::size_t write = 0;
        for (std::size_t i = 0; i < s.phi.clauses.size(); ++i) {
            Clause& c = s.phi.clauses[i];
            if (c.contains(lit)) {
                if (c.width() == 1 && !keptUnit) {
                    keptUnit = true;
                    if (write != i) s.phi.clauses[write] = std::move(c);
                    ++write;
                }
                continue;  // satisfied, dropped
            }
            if (c.contains(lit.negated())) {
                c.removeLiteral(lit.negated());
                if (c.empty())
                    set_certificate(s, {Verdict::Unsatisfiable, DecidedBy::EmptyClause, std::nullopt});
                else if (c.width() == 1)
                    queue.push_back(*c.begin());
            }
            if (write != i) s.phi.clauses[write] = std::move(c);
            ++write;
        }
        s.phi.clauses.resize(write);
        if (!keptUnit && !s.certificate) s.phi.addClause(Clause{lit});
    }
}

}  // namespace detail

/// Append a clause to phi, reducing it first against the permanently fixed
/// literals and cascading any unit this produces. Returns the clause as
/// appended, or nullopt when it was already satisfied by the fixed literals
/// (nothing added). Sets the refutation certificate if an empty clause
/// arises.
inline std::optional<Clause> append_clause_permanent(SolverState& s, const Clause& c) {
    std::vector<Literal> reduced;
    reduced.reserve(c.width());
    for (Literal l : c.literals()) {
        if (s.fixed.satisfies(l)) return std::nullopt;
        if (!s.fixed.falsifies(l)) reduced.push_back(l);
    }
    Clause out(std::move(reduced));
    s.phi.addClause(out);
    if (out.empty()) {
        s.phiMutated = true;
        set_certificate(s, {Verdict::Unsatisfiable, DecidedBy::EmptyClause, std::nullopt});
        return out;
    }
    if (out.width() == 1) detail::propagate_unit_permanent(s, *out.begin());
    return out;
}

}  // namespace ranger
