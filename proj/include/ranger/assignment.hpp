#pragma once

#include <cstdint>
#include <vector>

#include "ranger/clause.hpp"
#include "ranger/literal.hpp"

namespace ranger {

enum class Ternary : std::int8_t { False = -1, Unassigned = 0, True = 1 };

/// A tri-state partial assignment over variables 1..numVars.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(int numVars) : values_(static_cast<std::size_t>(numVars) + 1, 0) {}

    int numVars() const { return static_cast<int>(values_.size()) - 1; }

    void resize(int numVars) {
        if (numVars + 1 > static_cast<int>(values_.size()))
            values_.resize(static_cast<std::size_t>(numVars) + 1, 0);
    }

    Ternary value(int var) const { return static_cast<Ternary>(values_[var]); }
    bool isAssigned(int var) const { return values_[var] != 0; }

    void assign(Literal l) { values_[l.var()] = l.isPositive() ? 1 : -1; }
    void unassign(int var) { values_[var] = 0; }

    bool satisfies(Literal l) const {
        return values_[l.var()] == (l.isPositive() ? 1 : -1);
    }
    bool falsifies(Literal l) const {
        return values_[l.var()] == (l.isPositive() ? -1 : 1);
    }

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::vector<std::int8_t> values_;
};

struct ClauseStatus {
    enum class Tag { Satisfied, Unsatisfied, Unit, Unresolved };
    Tag tag = Tag::Unresolved;
    Literal unit{};  // the single unassigned literal when tag == Unit
};

/// Status of c under a: satisfied if some literal is satisfied, unsatisfied
/// if all are falsified, unit if exactly one is unassigned and the rest
/// falsified, unresolved otherwise.
inline ClauseStatus clause_status(const Clause& c, const Assignment& a) {
    std::size_t unassigned = 0;
    Literal candidate{};
    for (Literal l : c.literals()) {
        if (a.satisfies(l)) return {ClauseStatus::Tag::Satisfied, {}};
        if (!a.isAssigned(l.var())) {
            ++unassigned;
            candidate = l;
        }
    }
    if (unassigned == 0) return {ClauseStatus::Tag::Unsatisfied, {}};
    if (unassigned == 1) return {ClauseStatus::Tag::Unit, candidate};
    return {ClauseStatus::Tag::Unresolved, {}};
}

}  // namespace ranger
