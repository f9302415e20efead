#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ranger {

/// Which reasoning extensions a run enables. `Original` is plain randomized
/// resolution with subsumption and the pure-literal rule; `Upla` adds unit
/// propagation look-ahead; `UplaEr` additionally enables extended resolution.
enum class Variant { Original, Upla, UplaEr };

inline std::string variant_token(Variant v) {
    switch (v) {
        case Variant::Original: return "original";
        case Variant::Upla: return "upla";
        case Variant::UplaEr: return "upla-er";
    }
    return "original";
}

inline Variant parse_variant(const std::string& token) {
    if (token == "original") return Variant::Original;
    if (token == "upla") return Variant::Upla;
    if (token == "upla-er") return Variant::UplaEr;
    throw std::invalid_argument("unknown variant '" + token + "'");
}

struct SolverParams {
    static constexpr std::size_t kAllPairs = std::numeric_limits<std::size_t>::max();

    double importProb = 0.2;     // chance a step swaps a working clause for a formula clause
    double transformProb = 0.9;  // chance a step runs the transformation phase
    double greedyProb = 0.9;     // chance a resolvent is placed greedily
    double extResProb = 0.05;    // chance a transformation phase runs extended resolution
    std::size_t maxWidth = 0;    // resolvent width cap in literals; 0 means the variable count
    std::size_t workingSize = 0; // live clause count; 0 means variable count + 1
    std::uint64_t maxTries = 10;
    std::uint64_t maxSteps = 10'000'000;
    std::uint64_t seed = 1;
    double timeoutSecs = 1000.0;               // <= 0 disables the timeout
    std::size_t pairProbeBudget = kAllPairs;   // cap on probed variable pairs
    int erFailureThreshold = 20;               // failed improvements before an extension fires
    Variant variant = Variant::Upla;
};

inline std::size_t resolved_max_width(const SolverParams& p, int numVars) {
    return p.maxWidth == 0 ? static_cast<std::size_t>(numVars) : p.maxWidth;
}

inline std::size_t resolved_working_size(const SolverParams& p, int numVars) {
    return p.workingSize == 0 ? static_cast<std::size_t>(numVars) + 1 : p.workingSize;
}

/// Advisory check of the convergence conditions: a refutation is guaranteed
/// (eventually) when p_i > 0, all of p_i, p_t, p_g are below 1, the width cap
/// equals the variable count and the working size is at least one more.
/// Returns one warning per violated condition; never alters behavior.
inline std::vector<std::string> check_convergence_params(const SolverParams& p, int numVars) {
    std::vector<std::string> warnings;
    if (!(p.importProb > 0.0)) warnings.push_back("p_i must exceed 0 for convergence");
    if (!(p.importProb < 1.0)) warnings.push_back("p_i must be below 1 for convergence");
    if (!(p.transformProb < 1.0)) warnings.push_back("p_t must be below 1 for convergence");
    if (!(p.greedyProb < 1.0)) warnings.push_back("p_g must be below 1 for convergence");
    const std::size_t w = resolved_max_width(p, numVars);
    const std::size_t k = resolved_working_size(p, numVars);
    if (w != static_cast<std::size_t>(numVars))
        warnings.push_back("width w=" + std::to_string(w) + " should equal the variable count n=" +
                           std::to_string(numVars) + " for convergence");
    if (k < static_cast<std::size_t>(numVars) + 1)
        warnings.push_back("working size k=" + std::to_string(k) +
                           " should be at least n+1=" + std::to_string(numVars + 1) +
                           " for convergence");
    return warnings;
}

}  // namespace ranger
