#pragma once

#include <cstddef>
#include <span>

#include "ranger/assignment.hpp"
#include "ranger/clause.hpp"

namespace ranger {

enum class PropagationResult { Stable, Conflict };

struct UnitPropagationOutcome {
    Assignment assignment;
    PropagationResult result = PropagationResult::Stable;
    std::size_t conflictClause = 0;  // index into the input range, valid on Conflict
};

/// Extend `start` to the least fixpoint of the unit rule over `clauses`.
/// On conflict the returned assignment is the partial state at detection and
/// conflictClause names the first falsified clause in scan order. The
/// fixpoint assignment does not depend on clause order; the conflict clause
/// identity and the partial state on conflict may.
inline UnitPropagationOutcome unit_propagate(std::span<const Clause> clauses, Assignment start) {
    UnitPropagationOutcome out{std::move(start), PropagationResult::Stable, 0};
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < clauses.size(); ++i) {
            ClauseStatus st = clause_status(clauses[i], out.assignment);
            if (st.tag == ClauseStatus::Tag::Unsatisfied) {
                out.result = PropagationResult::Conflict;
                out.conflictClause = i;
                return out;
            }
            if (st.tag == ClauseStatus::Tag::Unit) {
                out.assignment.assign(st.unit);
                changed = true;
            }
        }
    }
    return out;
}

}  // namespace ranger
