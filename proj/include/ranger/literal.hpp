#pragma once

#include <compare>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <ostream>

namespace ranger {

/// A literal: a 1-based variable index with a polarity. Stored as a nonzero
/// signed integer the way DIMACS does it (negative means negated).
class Literal {
public:
    Literal() = default;
    explicit constexpr Literal(int encoded) : code_(encoded) {}

    static constexpr Literal positive(int var) { return Literal(var); }
    static constexpr Literal negative(int var) { return Literal(-var); }

    constexpr int var() const { return code_ < 0 ? -code_ : code_; }
    constexpr bool isPositive() const { return code_ > 0; }
    constexpr bool isNegative() const { return code_ < 0; }
    constexpr Literal negated() const { return Literal(-code_); }

    /// The DIMACS integer.
    constexpr int encoded() const { return code_; }

    /// Dense index in [0, 2n): positive literals even, negative odd.
    constexpr std::size_t index() const {
        return 2 * static_cast<std::size_t>(var() - 1) + (code_ < 0 ? 1 : 0);
    }

    friend constexpr bool operator==(Literal, Literal) = default;

    // Ordered by variable; within a variable the negative literal first.
    friend constexpr std::strong_ordering operator<=>(Literal a, Literal b) {
        if (a.var() != b.var()) return a.var() <=> b.var();
        return a.code_ <=> b.code_;
    }

    friend std::ostream& operator<<(std::ostream& os, Literal l) { return os << l.code_; }

private:
    int code_ = 0;
};

}  // namespace ranger

template <>
struct std::hash<ranger::Literal> {
    std::size_t operator()(ranger::Literal l) const noexcept {
        return std::hash<int>{}(l.encoded());
    }
};
