#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ranger/assignment.hpp"
#include "ranger/clause.hpp"

namespace ranger {

/// Counter-based unit propagation over a frozen snapshot of clauses, with
/// cheap assume/rollback. Width-1 clauses are propagated once at
/// construction (the baseline); probes stack assumptions on top of the
/// baseline and roll back after recording their outcome. Tracks how many of
/// the snapshot's phi-section clauses are satisfied so probes can detect a
/// satisfying assignment.
class PropagationView {
public:
    PropagationView(std::span<const Clause> phi, std::span<const Clause> extra, int numVars)
        : values_(static_cast<std::size_t>(numVars) + 1, 0),
          phiClauseCount_(static_cast<std::uint32_t>(phi.size())) {
        const std::size_t total = phi.size() + extra.size();
        litBegin_.reserve(total + 1);
        width_.reserve(total);
        trueCount_.assign(total, 0);
        falseCount_.assign(total, 0);

        auto addRange = [&](std::span<const Clause> range) {
            for (const Clause& c : range) {
                litBegin_.push_back(static_cast<std::uint32_t>(lits_.size()));
                width_.push_back(static_cast<std::uint32_t>(c.width()));
                for (Literal l : c.literals()) lits_.push_back(l);
            }
        };
        addRange(phi);
        addRange(extra);
        litBegin_.push_back(static_cast<std::uint32_t>(lits_.size()));

        // occurrence lists in one flat buffer (counting sort by literal index)
        occBegin_.assign(2 * static_cast<std::size_t>(numVars) + 1, 0);
        for (Literal l : lits_) ++occBegin_[l.index() + 1];
        for (std::size_t i = 1; i < occBegin_.size(); ++i) occBegin_[i] += occBegin_[i - 1];
        occ_.resize(lits_.size());
        std::vector<std::uint32_t> cursor(occBegin_.begin(), occBegin_.end() - 1);
        for (std::uint32_t ci = 0; ci < width_.size(); ++ci)
            for (std::uint32_t i = litBegin_[ci]; i < litBegin_[ci + 1]; ++i)
                occ_[cursor[lits_[i].index()]++] = ci;

        for (std::uint32_t ci = 0; ci < width_.size(); ++ci) {
            if (width_[ci] == 0) conflict_ = true;
            if (width_[ci] == 1) pending_.push_back(ci);
        }
        if (!conflict_) propagateToFixpoint();
        baselineConflict_ = conflict_;
        baselineTrail_ = trail_.size();
        pending_.clear();
    }

    int numVars() const { return static_cast<int>(values_.size()) - 1; }
    bool baselineConflict() const { return baselineConflict_; }

    /// True when the baseline already assigns every variable and satisfies
    /// every phi-section clause, i.e. it is a complete solution.
    bool solutionAtBaseline() const {
        return !baselineConflict_ && trail_.size() == static_cast<std::size_t>(numVars()) &&
               satisfiedPhi_ == phiClauseCount_;
    }
    bool assignedAtBaseline(int var) const { return values_[var] != 0; }
    bool baselineSatisfies(Literal l) const {
        return values_[l.var()] == (l.isPositive() ? 1 : -1);
    }

    Assignment baselineAssignment() const { return snapshot(); }

    struct Result {
        bool conflicted = false;
        bool solution = false;  // fixpoint assigns every variable and satisfies all phi clauses
        Assignment assignment;  // full fixpoint; partial state at detection on conflict
    };

    /// Assert the assumptions on top of the baseline, propagate to fixpoint,
    /// record the outcome and roll back. The view's baseline is untouched.
    Result probe(std::span<const Literal> assumptions) {
        Result res;
        if (baselineConflict_) {
            res.conflicted = true;
            res.assignment = snapshot();
            return res;
        }
        const std::size_t mark = trail_.size();
        bool ok = true;
        for (Literal l : assumptions) {
            if (values_[l.var()] == (l.isPositive() ? 1 : -1)) continue;
            if (values_[l.var()] != 0) {  // contradicts an already forced value
                ok = false;
                break;
            }
            if (!assign(l)) {
                ok = false;
                break;
            }
        }
        if (ok) ok = propagateToFixpoint();
        res.conflicted = !ok;
        res.solution = ok && trail_.size() == static_cast<std::size_t>(numVars()) &&
                       satisfiedPhi_ == phiClauseCount_;
        res.assignment = snapshot();
        undoTo(mark);
        return res;
    }

private:
    Assignment snapshot() const {
        Assignment a(numVars());
        for (int v = 1; v <= numVars(); ++v) {
            if (values_[v] > 0) a.assign(Literal::positive(v));
            else if (values_[v] < 0) a.assign(Literal::negative(v));
        }
        return a;
    }

    std::span<const std::uint32_t> occurrences(Literal l) const {
        return {occ_.data() + occBegin_[l.index()], occ_.data() + occBegin_[l.index() + 1]};
    }

    // Completes all counter updates even when a conflict arises, so rollback
    // stays exact. Returns false on conflict.
    bool assign(Literal l) {
        values_[l.var()] = l.isPositive() ? 1 : -1;
        trail_.push_back(l);
        for (std::uint32_t ci : occurrences(l))
            if (trueCount_[ci]++ == 0 && ci < phiClauseCount_) ++satisfiedPhi_;
        bool ok = true;
        for (std::uint32_t ci : occurrences(l.negated())) {
            ++falseCount_[ci];
            if (trueCount_[ci] == 0) {
                const std::uint32_t unassigned = width_[ci] - falseCount_[ci];
                if (unassigned == 0) ok = false;
                else if (unassigned == 1) pending_.push_back(ci);
            }
        }
        if (!ok) conflict_ = true;
        return ok;
    }

    bool propagateToFixpoint() {
        while (!pending_.empty()) {
            const std::uint32_t ci = pending_.back();
            pending_.pop_back();
            if (trueCount_[ci] > 0) continue;
            if (width_[ci] - falseCount_[ci] != 1) continue;
            Literal unit{};
            for (std::uint32_t i = litBegin_[ci]; i < litBegin_[ci + 1]; ++i) {
                if (values_[lits_[i].var()] == 0) {
                    unit = lits_[i];
                    break;
                }
            }
            if (!assign(unit)) {
                pending_.clear();
                return false;
            }
        }
        return true;
    }

    void undoTo(std::size_t mark) {
        while (trail_.size() > mark) {
            Literal l = trail_.back();
            trail_.pop_back();
            values_[l.var()] = 0;
            for (std::uint32_t ci : occurrences(l))
                if (--trueCount_[ci] == 0 && ci < phiClauseCount_) --satisfiedPhi_;
            for (std::uint32_t ci : occurrences(l.negated())) --falseCount_[ci];
        }
        pending_.clear();
        conflict_ = baselineConflict_;
    }

    std::vector<Literal> lits_;
    std::vector<std::uint32_t> litBegin_;
    std::vector<std::uint32_t> width_;
    std::vector<std::uint32_t> trueCount_;
    std::vector<std::uint32_t> falseCount_;
    std::vector<std::int8_t> values_;
    std::vector<std::uint32_t> occ_;       // clause indices grouped by literal
    std::vector<std::uint32_t> occBegin_;  // CSR offsets into occ_
    std::vector<Literal> trail_;
    std::vector<std::uint32_t> pending_;
    std::uint32_t phiClauseCount_ = 0;
    std::uint32_t satisfiedPhi_ = 0;
    std::size_t baselineTrail_ = 0;
    bool conflict_ = false;
    bool baselineConflict_ = false;
};

}  // namespace ranger
