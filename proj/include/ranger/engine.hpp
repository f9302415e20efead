#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ranger/clause.hpp"
#include "ranger/ext_res.hpp"
#include "ranger/formula.hpp"
#include "ranger/params.hpp"
#include "ranger/solver_state.hpp"
#include "ranger/upla.hpp"

namespace ranger {

/// Optional instrumentation hooks for a run.
struct StepInspector {
    std::function<void(const SolverState&)> afterStep;
    std::function<void(const Clause&)> onResolventStored;
};

/// Draw k clauses from f: without replacement when k <= m (every k-subset
/// equally likely), with replacement otherwise.
inline std::vector<Clause> init_working(const Formula& f, std::size_t k, RandomSource& rng) {
    const std::size_t m = f.clauses.size();
    std::vector<Clause> working;
    working.reserve(k);
    if (k > m) {
        for (std::size_t i = 0; i < k; ++i) working.push_back(f.clauses[rng.index(m)]);
    } else {
        std::vector<std::size_t> idx(m);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        for (std::size_t i = 0; i < k; ++i) {
            std::swap(idx[i], idx[i + rng.index(m - i)]);
            working.push_back(f.clauses[idx[i]]);
        }
    }
    return working;
}

namespace detail {

/// Replace every working clause strictly subsumed by another working or phi
/// clause with a random phi clause. Detection runs on a snapshot, then the
/// replacements happen in slot order. Bookkeeping in the state confines the
/// search to clause pairs whose relation could have changed since the last
/// sweep; the outcome matches a full rescan because subsumption between two
/// unchanged clauses is static.
inline void subsumption_sweep(SolverState& s) {
    const std::size_t k = s.working.size();
    const bool full = s.phiMutated;
    const std::size_t phiNewBegin = std::min(s.sweptPhiSize, s.phi.clauses.size());

    std::vector<std::size_t> changedSlots;
    for (std::size_t i = 0; i < k; ++i)
        if (s.slotChanged[i]) changedSlots.push_back(i);

    auto hasStrictSubsumer = [&](const Clause& c, bool checkAll, std::size_t self) {
        const std::size_t phiFrom = checkAll ? 0 : phiNewBegin;
        for (std::size_t i = phiFrom; i < s.phi.clauses.size(); ++i)
            if (strictly_subsumes(s.phi.clauses[i], c)) return true;
        if (checkAll) {
            for (std::size_t j = 0; j < k; ++j)
                if (j != self && strictly_subsumes(s.working[j], c)) return true;
        } else {
            for (std::size_t j : changedSlots)
                if (j != self && strictly_subsumes(s.working[j], c)) return true;
        }
        return false;
    };

    std::vector<std::size_t> subsumed;
    for (std::size_t i = 0; i < k; ++i) {
        const Clause& c = s.working[i];
        if (c.empty()) continue;
        if (hasStrictSubsumer(c, full || s.slotChanged[i], i)) subsumed.push_back(i);
    }

    std::fill(s.slotChanged.begin(), s.slotChanged.end(), std::uint8_t{0});
    s.phiMutated = false;
    s.sweptPhiSize = s.phi.clauses.size();

    for (std::size_t i : subsumed)
        place_working(s, i, s.phi.clauses[s.rng.index(s.phi.clauses.size())]);
}

/// Replace every working clause containing a literal pure in phi+working
/// with a random phi clause.
inline void pure_literal_sweep(SolverState& s) {
    std::vector<Literal> pures = pure_literals(s.phi.clauses, s.working, s.phi.numVars);
    if (pures.empty()) return;

    std::vector<std::uint8_t> isPure(2 * static_cast<std::size_t>(s.phi.numVars), 0);
    for (Literal l : pures) isPure[l.index()] = 1;

    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < s.working.size(); ++i) {
        for (Literal l : s.working[i].literals()) {
            if (isPure[l.index()]) {
                hits.push_back(i);
                break;
            }
        }
    }
    for (std::size_t i : hits)
        place_working(s, i, s.phi.clauses[s.rng.index(s.phi.clauses.size())]);
}

/// Copy freshly derived look-ahead clauses (already persisted in phi) into
/// uniformly random working slots.
inline void inject_effect(SolverState& s, const UplaEffect& eff) {
    for (Literal u : eff.newUnits)
        place_working(s, s.rng.index(s.working.size()), Clause{u});
    for (const Clause& b : eff.newBinaries)
        place_working(s, s.rng.index(s.working.size()), b);
}

}  // namespace detail

/// The satisfiability-preserving transformation phase, in order: subsumption
/// sweep, pure-literal sweep, single-variable look-ahead (skipped for the
/// Original variant), pair look-ahead on the first phase of a run only, and
/// with probability extResProb the extended-resolution phase (UplaEr only).
/// Any sub-phase producing a certificate short-circuits the rest.
inline void apply_transformations(SolverState& s, const SolverParams& p) {
    detail::subsumption_sweep(s);
    detail::pure_literal_sweep(s);
    if (s.certificate || p.variant == Variant::Original) return;

    UplaEffect eff = upla_single(s);
    if (eff.certificate) {
        set_certificate(s, *eff.certificate);
        return;
    }
    detail::inject_effect(s, eff);

    if (!s.pairProbeDone) {
        s.pairProbeDone = true;
        UplaEffect pairEff = upla_pair(s, p.pairProbeBudget);
        if (pairEff.certificate) {
            set_certificate(s, *pairEff.certificate);
            return;
        }
        detail::inject_effect(s, pairEff);
    }

    if (p.variant == Variant::UplaEr && s.rng.coin(p.extResProb))
        ext_res_phase(s, p.erFailureThreshold);
}

/// One iteration: with probability importProb swap a random working clause
/// for a random phi clause; otherwise resolve two distinct working slots on
/// a random pivot and place the resolvent if it is no tautology and fits the
/// width cap (greedily with probability greedyProb, else over a random
/// slot). Independently, with probability transformProb, run the
/// transformation phase. The iteration counter advances exactly once.
inline void step(SolverState& s, const SolverParams& p, const StepInspector* inspector = nullptr) {
    ++s.iteration;
    const std::size_t k = s.working.size();
    const std::size_t w = resolved_max_width(p, s.originalNumVars);

    if (s.rng.coin(p.importProb)) {
        const std::size_t slot = s.rng.index(k);
        const std::size_t src = s.rng.index(s.phi.clauses.size());
        place_working(s, slot, s.phi.clauses[src]);
    } else if (k >= 2) {
        const std::size_t i = s.rng.index(k);
        std::size_t j = s.rng.index(k - 1);
        if (j >= i) ++j;
        if (auto pivot = pick_pivot(s.working[i], s.working[j], s.rng)) {
            auto r = resolve(s.working[i], s.working[j], *pivot);
            if (r && r->width() <= w) {
                if (s.rng.coin(p.greedyProb)) {
                    const std::size_t wi = s.working[i].width();
                    const std::size_t wj = s.working[j].width();
                    if (r->width() <= std::max(wi, wj)) {
                        std::size_t victim;
                        if (wi != wj) victim = wi > wj ? i : j;
                        else victim = s.rng.coin(0.5) ? i : j;
                        if (inspector && inspector->onResolventStored)
                            inspector->onResolventStored(*r);
                        place_working(s, victim, std::move(*r));
                    }
                } else {
                    const std::size_t slot = s.rng.index(k);
                    if (inspector && inspector->onResolventStored)
                        inspector->onResolventStored(*r);
                    place_working(s, slot, std::move(*r));
                }
            }
        }
    }

    if (s.certificate) return;
    if (s.rng.coin(p.transformProb)) apply_transformations(s, p);
}

namespace detail {

/// Extend a partial satisfying assignment over the original variables
/// (unassigned ones default to false) and verify it against the pristine
/// input. A verification failure is an internal invariant breach.
inline Assignment verified_model(const SolverState& s, const Assignment& partial) {
    Assignment model(s.originalNumVars);
    for (int v = 1; v <= s.originalNumVars; ++v) {
        Ternary t = v <= partial.numVars() ? partial.value(v) : Ternary::Unassigned;
        model.assign(t == Ternary::True ? Literal::positive(v) : Literal::negative(v));
    }
    for (const Clause& c : s.original.clauses) {
        bool sat = false;
        for (Literal l : c.literals())
            if (model.satisfies(l)) {
                sat = true;
                break;
            }
        if (!sat) throw std::logic_error("solver produced an unverifiable satisfying assignment");
    }
    return model;
}

inline void validate_params(const SolverParams& p) {
    auto prob = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!prob(p.importProb) || !prob(p.transformProb) || !prob(p.greedyProb) ||
        !prob(p.extResProb))
        throw std::invalid_argument("probabilities must lie in [0, 1]");
    if (p.maxTries == 0 || p.maxSteps == 0)
        throw std::invalid_argument("maxTries and maxSteps must be positive");
}

}  // namespace detail

/// Run the solver on f: up to maxTries restarts of maxSteps iterations each.
/// Returns UNSATISFIABLE the moment the working set holds the empty clause
/// or a look-ahead certifies it, SATISFIABLE when look-ahead finds a model
/// (carried in the result), UNKNOWN otherwise. phi persists across restarts;
/// only the working set is redrawn.
inline RunResult run(const Formula& f, const SolverParams& p,
                     const StepInspector& inspector = {}) {
    if (f.clauses.empty()) throw std::invalid_argument("run: formula has no clauses");
    detail::validate_params(p);

    const auto start = std::chrono::steady_clock::now();
    auto elapsedSecs = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    const bool hasTimeout = p.timeoutSecs > 0.0;
    const auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                      std::chrono::duration<double>(hasTimeout ? p.timeoutSecs : 0.0));

    SolverState s = make_state(f, p.seed);
    const std::size_t k = resolved_working_size(p, f.numVars);

    auto finish = [&](Verdict v, DecidedBy d, std::optional<Assignment> model) {
        return RunResult{v, s.iteration, elapsedSecs(), d, std::move(model)};
    };
    auto finishCertificate = [&](const Certificate& c) {
        std::optional<Assignment> model;
        if (c.verdict == Verdict::Satisfiable) model = detail::verified_model(s, *c.model);
        return finish(c.verdict, c.decidedBy, std::move(model));
    };

    for (const Clause& c : f.clauses)
        if (c.empty()) return finish(Verdict::Unsatisfiable, DecidedBy::EmptyClause, std::nullopt);

    for (std::uint64_t t = 1; t <= p.maxTries; ++t) {
        s.tryIndex = t;
        s.working = init_working(s.phi, k, s.rng);
        s.slotChanged.assign(k, 1);
        s.phiMutated = true;
        s.emptyInWorking = false;
        for (const Clause& c : s.working)
            if (c.empty()) s.emptyInWorking = true;

        for (std::uint64_t i = 0; i < p.maxSteps; ++i) {
            if (hasTimeout && std::chrono::steady_clock::now() >= deadline)
                return finish(Verdict::Unknown, DecidedBy::Timeout, std::nullopt);
            if (s.emptyInWorking)
                return finish(Verdict::Unsatisfiable, DecidedBy::EmptyClause, std::nullopt);
            step(s, p, &inspector);
            if (inspector.afterStep) inspector.afterStep(s);
            if (s.certificate) return finishCertificate(*s.certificate);
        }
    }
    return finish(Verdict::Unknown, DecidedBy::StepLimit, std::nullopt);
}

}  // namespace ranger
