#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ranger/assignment.hpp"
#include "ranger/clause.hpp"
#include "ranger/formula.hpp"
#include "ranger/propagator.hpp"
#include "ranger/solver_state.hpp"

namespace ranger {

class EmptyIntersectionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Outcome of one hypothetical-assignment probe: the unit-propagation
/// fixpoint reached from the assumptions (partial state at detection when a
/// conflict was found) plus the conflict flag. Conflicted outcomes are
/// excluded from implication intersections.
struct ProbeOutcome {
    std::vector<Literal> assumptions;
    Assignment assignment;
    bool conflicted = false;
    bool solution = false;
};

inline ProbeOutcome probe(PropagationView& view, std::vector<Literal> assumptions) {
    PropagationView::Result r = view.probe(assumptions);
    return {std::move(assumptions), std::move(r.assignment), r.conflicted, r.solution};
}

/// Convenience overload that builds a throwaway view over phi and extra
/// clauses. The caller's data is untouched.
inline ProbeOutcome probe(std::span<const Clause> phi, std::span<const Clause> extra, int numVars,
                          std::vector<Literal> assumptions) {
    PropagationView view(phi, extra, numVars);
    return probe(view, std::move(assumptions));
}

/// Literals assigned the same value in every outcome, excluding the probed
/// (assumption) variables themselves. Outcomes must all be non-conflicted;
/// an empty list is a caller bug.
inline std::vector<Literal> intersect_implications(std::span<const ProbeOutcome> outcomes) {
    if (outcomes.empty())
        throw EmptyIntersectionError("intersect_implications: no outcomes given");

    int numVars = 0;
    for (const ProbeOutcome& o : outcomes) numVars = std::max(numVars, o.assignment.numVars());

    std::vector<std::uint8_t> probed(static_cast<std::size_t>(numVars) + 1, 0);
    for (const ProbeOutcome& o : outcomes)
        for (Literal l : o.assumptions)
            if (l.var() <= numVars) probed[l.var()] = 1;

    std::vector<Literal> agreed;
    for (int v = 1; v <= numVars; ++v) {
        if (probed[v]) continue;
        Ternary first = outcomes.front().assignment.numVars() >= v
                            ? outcomes.front().assignment.value(v)
                            : Ternary::Unassigned;
        if (first == Ternary::Unassigned) continue;
        bool same = true;
        for (const ProbeOutcome& o : outcomes.subspan(1)) {
            Ternary t = o.assignment.numVars() >= v ? o.assignment.value(v) : Ternary::Unassigned;
            if (t != first) {
                same = false;
                break;
            }
        }
        if (same)
            agreed.push_back(first == Ternary::True ? Literal::positive(v) : Literal::negative(v));
    }
    return agreed;
}

/// Clauses harvested by a look-ahead pass, or the verdict that ended it.
/// newUnits and newBinaries list what was actually added to phi.
struct UplaEffect {
    std::optional<Certificate> certificate;
    std::vector<Literal> newUnits;
    std::vector<Clause> newBinaries;
};

/// Raw analysis of probing all four assignments of one variable pair,
/// before anything is added to the formula.
struct PairProbeReport {
    std::array<ProbeOutcome, 4> outcomes;  // (00, 01, 10, 11) over (v1, v2)
    int conflictCount = 0;
    std::vector<Literal> units;      // unit clauses the scenario calls for
    std::vector<Clause> binaries;    // binary clauses the scenario calls for
    bool unsatisfiable = false;      // all four probes conflicted
};

/// Probe the four assignments of (v1, v2) and derive the scenario output:
///   0 conflicts: units agreed by all four fixpoints.
///   1 conflict:  units agreed by the three survivors, plus the binary
///                negating the conflicting assignment pair.
///   2 conflicts: units agreed by both survivors, plus two such binaries --
///                or, when the conflicts share an assumption literal, the
///                single unit that resolving the two binaries yields.
///   3 conflicts: the two assumption literals of the sole survivor as units.
///   4 conflicts: the formula is unsatisfiable.
inline PairProbeReport probe_pair(PropagationView& view, int v1, int v2) {
    PairProbeReport rep;
    const Literal p1 = Literal::positive(v1), n1 = Literal::negative(v1);
    const Literal p2 = Literal::positive(v2), n2 = Literal::negative(v2);
    rep.outcomes[0] = probe(view, {n1, n2});
    rep.outcomes[1] = probe(view, {n1, p2});
    rep.outcomes[2] = probe(view, {p1, n2});
    rep.outcomes[3] = probe(view, {p1, p2});

    std::vector<const ProbeOutcome*> conflicted;
    std::vector<ProbeOutcome> survivors;
    for (const ProbeOutcome& o : rep.outcomes) {
        if (o.conflicted) conflicted.push_back(&o);
        else survivors.push_back(o);
    }
    rep.conflictCount = static_cast<int>(conflicted.size());

    auto negation = [](const ProbeOutcome& o) {
        return Clause{o.assumptions[0].negated(), o.assumptions[1].negated()};
    };

    switch (rep.conflictCount) {
        case 0:
            rep.units = intersect_implications(survivors);
            break;
        case 1:
            rep.units = intersect_implications(survivors);
            rep.binaries.push_back(negation(*conflicted[0]));
            break;
        case 2: {
            rep.units = intersect_implications(survivors);
            std::optional<Literal> shared;
            for (Literal a : conflicted[0]->assumptions)
                for (Literal b : conflicted[1]->assumptions)
                    if (a == b) shared = a;
            if (shared) {
                rep.units.push_back(shared->negated());
            } else {
                rep.binaries.push_back(negation(*conflicted[0]));
                rep.binaries.push_back(negation(*conflicted[1]));
            }
            break;
        }
        case 3:
            rep.units.assign(survivors[0].assumptions.begin(), survivors[0].assumptions.end());
            break;
        default:
            rep.unsatisfiable = true;
            break;
    }
    return rep;
}

namespace detail {

inline Certificate sat_certificate(const Assignment& a) {
    return {Verdict::Satisfiable, DecidedBy::UplaSolution, a};
}

inline Certificate upla_unsat_certificate() {
    return {Verdict::Unsatisfiable, DecidedBy::UplaConflictExhaustion, std::nullopt};
}

/// Append scenario clauses to phi, skipping literals the current baseline
/// already forces (they would only re-derive known facts every phase) and
/// exact duplicates of existing binaries. Records what was added in `eff`.
/// Returns true when phi changed.
inline bool emit_scenario_clauses(SolverState& s, const PropagationView& view,
                                  std::span<const Literal> units,
                                  std::span<const Clause> binaries, UplaEffect& eff) {
    bool changed = false;
    for (Literal u : units) {
        if (s.certificate) break;
        if (view.assignedAtBaseline(u.var())) continue;
        if (auto added = append_clause_permanent(s, Clause{u})) {
            eff.newUnits.push_back(u);
            changed = true;
        }
    }
    for (const Clause& b : binaries) {
        if (s.certificate) break;
        if (s.phi.containsClause(b)) continue;
        if (auto added = append_clause_permanent(s, b)) {
            eff.newBinaries.push_back(*added);
            changed = true;
        }
    }
    return changed;
}

}  // namespace detail

/// Single-variable look-ahead: for each unassigned variable probe both
/// polarities. Both conflicting proves unsatisfiability; one conflicting
/// forces the surviving value permanently; otherwise literals agreed by both
/// fixpoints are added as units. A probe whose fixpoint assigns every
/// variable and satisfies every phi clause yields a solution.
inline UplaEffect upla_single(SolverState& s) {
    UplaEffect eff;
    auto view = std::make_unique<PropagationView>(
        std::span<const Clause>(s.phi.clauses), std::span<const Clause>(s.working), s.phi.numVars);

    auto checkBaseline = [&]() -> bool {
        if (view->baselineConflict()) {
            eff.certificate = detail::upla_unsat_certificate();
            return false;
        }
        if (view->solutionAtBaseline()) {
            eff.certificate = detail::sat_certificate(view->baselineAssignment());
            return false;
        }
        return true;
    };
    if (!checkBaseline()) return eff;

    for (int v = 1; v <= s.phi.numVars; ++v) {
        if (view->assignedAtBaseline(v)) continue;

        ProbeOutcome posOut = probe(*view, {Literal::positive(v)});
        if (posOut.solution) {
            eff.certificate = detail::sat_certificate(posOut.assignment);
            return eff;
        }
        ProbeOutcome negOut = probe(*view, {Literal::negative(v)});
        if (negOut.solution) {
            eff.certificate = detail::sat_certificate(negOut.assignment);
            return eff;
        }

        std::vector<Literal> units;
        if (posOut.conflicted && negOut.conflicted) {
            eff.certificate = detail::upla_unsat_certificate();
            return eff;
        }
        if (posOut.conflicted) units.push_back(Literal::negative(v));
        else if (negOut.conflicted) units.push_back(Literal::positive(v));
        else {
            std::array<ProbeOutcome, 2> both{std::move(posOut), std::move(negOut)};
            units = intersect_implications(both);
        }

        if (!units.empty() && detail::emit_scenario_clauses(s, *view, units, {}, eff)) {
            if (s.certificate) {
                eff.certificate = s.certificate;
                return eff;
            }
            view = std::make_unique<PropagationView>(std::span<const Clause>(s.phi.clauses),
                                                     std::span<const Clause>(s.working),
                                                     s.phi.numVars);
            if (!checkBaseline()) return eff;
        }
    }
    return eff;
}

/// Variable-pair look-ahead over lexicographic pairs (v1 < v2), capped at
/// `budget` probed pairs. Everything a scenario emits is added to phi and
/// propagated before the next pair; the sweep continues over the enlarged
/// formula. Pairs with a baseline-forced variable are skipped without
/// consuming budget.
inline UplaEffect upla_pair(SolverState& s, std::size_t budget) {
    UplaEffect eff;
    if (budget == 0) return eff;

    auto view = std::make_unique<PropagationView>(
        std::span<const Clause>(s.phi.clauses), std::span<const Clause>(s.working), s.phi.numVars);

    auto checkBaseline = [&]() -> bool {
        if (view->baselineConflict()) {
            eff.certificate = detail::upla_unsat_certificate();
            return false;
        }
        if (view->solutionAtBaseline()) {
            eff.certificate = detail::sat_certificate(view->baselineAssignment());
            return false;
        }
        return true;
    };
    if (!checkBaseline()) return eff;

    std::size_t probed = 0;
    const int n = s.phi.numVars;
    for (int v1 = 1; v1 < n && probed < budget; ++v1) {
        if (view->assignedAtBaseline(v1)) continue;
        for (int v2 = v1 + 1; v2 <= n && probed < budget; ++v2) {
            if (view->assignedAtBaseline(v2)) continue;
            ++probed;

            PairProbeReport rep = probe_pair(*view, v1, v2);
            if (rep.unsatisfiable) {
                eff.certificate = detail::upla_unsat_certificate();
                return eff;
            }
            for (const ProbeOutcome& o : rep.outcomes) {
                if (o.solution) {
                    eff.certificate = detail::sat_certificate(o.assignment);
                    return eff;
                }
            }

            if (detail::emit_scenario_clauses(s, *view, rep.units, rep.binaries, eff)) {
                if (s.certificate) {
                    eff.certificate = s.certificate;
                    return eff;
                }
                view = std::make_unique<PropagationView>(std::span<const Clause>(s.phi.clauses),
                                                         std::span<const Clause>(s.working),
                                                         s.phi.numVars);
                if (!checkBaseline()) return eff;
                if (view->assignedAtBaseline(v1)) break;  // move to the next v1
            }
        }
    }
    return eff;
}

}  // namespace ranger
