#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "ranger/clause.hpp"
#include "ranger/formula.hpp"
#include "ranger/scoring.hpp"
#include "ranger/solver_state.hpp"

namespace ranger {

enum class ImproveResult { Improved, Failed };

namespace detail {

/// Lowest-scoring clause of width >= 2 containing `lit` and accepted by
/// `admit`, searching phi then working; ties break toward the lower index.
template <typename Admit>
std::optional<const Clause*> lowest_scoring_clause(const SolverState& s, const ScoreTable& t,
                                                   Literal lit, Admit admit) {
    const Clause* best = nullptr;
    double bestScore = 0.0;
    auto consider = [&](const Clause& c) {
        if (c.width() < 2 || !c.contains(lit) || !admit(c)) return;
        const double sc = clause_score(c, t);
        if (!best || sc < bestScore) {
            best = &c;
            bestScore = sc;
        }
    };
    for (const Clause& c : s.phi.clauses) consider(c);
    for (const Clause& c : s.working) consider(c);
    if (!best) return std::nullopt;
    return best;
}

inline bool subsumed_by_existing(const SolverState& s, const Clause& r) {
    for (const Clause& c : s.phi.clauses)
        if (subsumes(c, r)) return true;
    for (const Clause& c : s.working)
        if (subsumes(c, r)) return true;
    return false;
}

}  // namespace detail

/// Try to derive a new clause containing both l1 and l2: take the
/// lowest-scoring clause containing l1, then the lowest-scoring clause
/// containing l2 and the complement of one of the first clause's other
/// literals, and resolve the two. The resolvent is kept only when it exists,
/// is no tautology, still contains both literals, and is not subsumed by an
/// existing clause. Failure bumps the pair's counter; success resets it.
inline ImproveResult try_improve_pair(SolverState& s, const ScoreTable& t, Literal l1, Literal l2) {
    const LiteralPair key(l1, l2);
    auto failed = [&]() {
        ++s.failCounters[key];
        return ImproveResult::Failed;
    };

    auto first = detail::lowest_scoring_clause(s, t, l1, [](const Clause&) { return true; });
    if (!first) return failed();
    const Clause& c1 = **first;

    // Pivot candidates: literals of c1 other than l1 whose complement may sit
    // in the second clause. The pivot must not be l2 (it would vanish from
    // the resolvent) nor the complement of l1 (it would delete l1).
    auto validPivot = [&](Literal p) {
        return !(p == l2) && !(p == l1.negated()) && c1.contains(p.negated());
    };
    auto second = detail::lowest_scoring_clause(s, t, l2, [&](const Clause& c) {
        for (Literal p : c.literals())
            if (validPivot(p)) return true;
        return false;
    });
    if (!second) return failed();
    const Clause& c2 = **second;

    std::optional<int> pivotVar;
    for (Literal p : c2.literals()) {
        if (validPivot(p)) {
            pivotVar = p.var();
            break;
        }
    }
    if (!pivotVar) return failed();

    std::optional<Clause> r = resolve(c1, c2, *pivotVar);
    if (!r) return failed();
    if (!r->contains(l1) || !r->contains(l2)) return failed();
    if (detail::subsumed_by_existing(s, *r)) return failed();

    append_clause_permanent(s, *r);
    s.failCounters[key] = 0;
    return ImproveResult::Improved;
}

/// Introduce a fresh definition variable e <-> (l1 or l2) via the three
/// clauses (~e | l1 | l2), (e | ~l1), (e | ~l2). Equisatisfiability is
/// preserved. Returns the new variable index.
inline int apply_extension(Formula& phi, Literal l1, Literal l2) {
    const int e = ++phi.numVars;
    phi.addClause(Clause{Literal::negative(e), l1, l2});
    phi.addClause(Clause{Literal::positive(e), l1.negated()});
    phi.addClause(Clause{Literal::positive(e), l2.negated()});
    return e;
}

inline int apply_extension(SolverState& s, Literal l1, Literal l2) {
    const int e = s.phi.numVars + 1;
    s.fixed.resize(e);
    s.phi.numVars = e;
    append_clause_permanent(s, Clause{Literal::negative(e), l1, l2});
    append_clause_permanent(s, Clause{Literal::positive(e), l1.negated()});
    append_clause_permanent(s, Clause{Literal::positive(e), l2.negated()});
    s.failCounters[LiteralPair(l1, l2)] = 0;
    return e;
}

inline constexpr std::size_t kTopPairsForQuadruplets = 32;

/// One extended-resolution phase: rebuild the score table over phi and the
/// working set, form quadruplets from the top-scored pairs, walk them
/// best-first trying to improve a pair until one succeeds, then fire an
/// extension for every pair whose failure counter reached the threshold.
inline void ext_res_phase(SolverState& s, int failureThreshold) {
    ScoreTable table = compute_pair_scores(s.phi.clauses, s.working);
    table.builtAtIteration = s.iteration;
    if (!table.pairScores.empty()) {
        std::vector<std::pair<LiteralPair, double>> ranked(table.pairScores.begin(),
                                                           table.pairScores.end());
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        if (ranked.size() > kTopPairsForQuadruplets) ranked.resize(kTopPairsForQuadruplets);

        struct Quad {
            LiteralPair a, b;  // a < b
            double score;
        };
        std::vector<Quad> quads;
        for (std::size_t i = 0; i < ranked.size(); ++i) {
            for (std::size_t j = i + 1; j < ranked.size(); ++j) {
                const LiteralPair& pa = ranked[i].first;
                const LiteralPair& pb = ranked[j].first;
                const int vars[4] = {pa.first.var(), pa.second.var(), pb.first.var(),
                                     pb.second.var()};
                bool disjoint = true;
                for (int x = 0; x < 4 && disjoint; ++x)
                    for (int y = x + 1; y < 4; ++y)
                        if (vars[x] == vars[y]) {
                            disjoint = false;
                            break;
                        }
                if (!disjoint) continue;
                Quad q{pa, pb, ranked[i].second * ranked[i].second +
                                   ranked[j].second * ranked[j].second};
                if (q.b < q.a) std::swap(q.a, q.b);
                quads.push_back(q);
            }
        }
        std::sort(quads.begin(), quads.end(), [](const Quad& a, const Quad& b) {
            if (a.score != b.score) return a.score > b.score;
            if (a.a != b.a) return a.a < b.a;
            return a.b < b.b;
        });

        std::set<LiteralPair> attempted;  // one improvement attempt per pair per phase
        bool improved = false;
        for (const Quad& q : quads) {
            std::array<LiteralPair, 2> pairs{q.a, q.b};
            if (table.score(pairs[1]) > table.score(pairs[0])) std::swap(pairs[0], pairs[1]);
            for (const LiteralPair& pr : pairs) {
                if (!attempted.insert(pr).second) continue;
                if (try_improve_pair(s, table, pr.first, pr.second) == ImproveResult::Improved) {
                    improved = true;
                    break;
                }
            }
            if (improved || s.certificate) break;
        }
    }

    if (s.certificate) return;

    std::vector<LiteralPair> due;
    for (const auto& [pair, count] : s.failCounters)
        if (count >= failureThreshold) due.push_back(pair);
    std::sort(due.begin(), due.end());
    for (const LiteralPair& pr : due) {
        apply_extension(s, pr.first, pr.second);
        if (s.certificate) return;
    }
}

}  // namespace ranger
