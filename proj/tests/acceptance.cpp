// Acceptance suite: one check per shipped guarantee, one PASS/FAIL line each.
// Exits nonzero when any check fails. Paths to the CLI binary and the bundled
// instance corpus come in as compile definitions.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ranger/ranger.hpp"

using namespace ranger;
namespace fs = std::filesystem;

namespace {

struct CheckContext {
    std::ostringstream detail;
    bool ok = true;

    void require(bool cond, const std::string& msg) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << msg;
        }
    }
};

Clause clause(std::initializer_list<int> encoded) { return Clause::fromEncoded(encoded); }

Formula formula(std::initializer_list<std::initializer_list<int>> clauses, int numVars = 0) {
    Formula f;
    f.numVars = numVars;
    for (auto c : clauses) {
        std::vector<Literal> lits;
        for (int e : c) lits.push_back(Literal(e));
        f.addClause(Clause(std::move(lits)));
    }
    return f;
}

bool model_satisfies(const Assignment& a, const Formula& f) {
    for (const Clause& c : f.clauses) {
        bool sat = false;
        for (Literal l : c.literals())
            if (a.satisfies(l)) {
                sat = true;
                break;
            }
        if (!sat) return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 1

void soundness_suite(CheckContext& ctx) {
    RandomSource rng(20240501);
    int violations = 0;
    for (int i = 0; i < 200; ++i) {
        const int n = 5 + static_cast<int>(rng.index(16));
        const double ratio = 3.0 + 2.0 * rng.unit();
        const auto m = static_cast<std::size_t>(std::lround(ratio * n));
        Formula f = generate_uniform_3sat(n, m, rng);
        const bool oracleSat = brute_force_sat(f).satisfiable;

        for (Variant v : {Variant::Original, Variant::Upla, Variant::UplaEr}) {
            SolverParams p;
            p.variant = v;
            p.maxTries = 1;
            p.maxSteps = 1500;
            p.timeoutSecs = 0.0;
            p.seed = static_cast<std::uint64_t>(i) * 3 + 1;
            RunResult res = run(f, p);
            if (res.verdict == Verdict::Unsatisfiable && oracleSat) ++violations;
            if (res.verdict == Verdict::Satisfiable &&
                (!res.model || !model_satisfies(*res.model, f)))
                ++violations;
        }
    }
    ctx.require(violations == 0, std::to_string(violations) + " soundness violations");
}

// ---------------------------------------------------------------- criterion 2

void convergence_smoke(CheckContext& ctx) {
    const Formula contradiction = formula({{1}, {-1}});
    const Formula complete2 = formula({{1, 2}, {-1, 2}, {1, -2}, {-1, -2}});

    for (const Formula* f : {&contradiction, &complete2}) {
        int solved = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            SolverParams p;
            p.importProb = 0.2;
            p.transformProb = 0.9;
            p.greedyProb = 0.9;
            p.maxWidth = 0;     // resolves to n
            p.workingSize = 0;  // resolves to n + 1
            p.variant = Variant::Original;
            p.maxTries = 1;
            p.maxSteps = 10000;
            p.timeoutSecs = 0.0;
            p.seed = seed;
            if (run(*f, p).verdict == Verdict::Unsatisfiable) ++solved;
        }
        ctx.require(solved == 10, "only " + std::to_string(solved) + "/10 seeds refuted a " +
                                      std::to_string(f->numVars) + "-variable fixture");
    }
}

// ---------------------------------------------------------------- criterion 3

void upla_worked_examples(CheckContext& ctx) {
    // forced unit: every assignment of (v1, v2) makes v3 true
    Formula ex1 = formula({{1, 2, 3}, {1, -2, 3}, {-1, 3}, {3, -4}});
    PropagationView view1(ex1.clauses, {}, ex1.numVars);
    PairProbeReport rep = probe_pair(view1, 1, 2);
    ctx.require(rep.conflictCount == 0, "expected zero conflicts on the forced-unit example");
    ctx.require(rep.units == std::vector<Literal>{Literal::positive(3)},
                "expected exactly the unit v3");

    // both polarities of v2 conflict, so the formula is unsatisfiable
    Formula ex2 = formula({{1, 2}, {-1, 2}, {-2, 3}, {-2, -3}});
    PropagationView view2(ex2.clauses, {}, ex2.numVars);
    ctx.require(view2.probe(std::array{Literal::positive(2)}).conflicted,
                "v2=1 should conflict");
    ctx.require(view2.probe(std::array{Literal::negative(2)}).conflicted,
                "v2=0 should conflict");

    SolverState s = make_state(ex2, 1);
    UplaEffect eff = upla_single(s);
    ctx.require(eff.certificate && eff.certificate->verdict == Verdict::Unsatisfiable &&
                    eff.certificate->decidedBy == DecidedBy::UplaConflictExhaustion,
                "single-variable probing should certify unsatisfiability");
}

// ---------------------------------------------------------------- criterion 4

void five_scenarios(CheckContext& ctx) {
    auto entailed = [&](const Formula& f, const Clause& c) { return oracle_entails(f, c); };

    {  // zero conflicts
        Formula f = formula({{1, 2, 3}, {1, -2, 3}, {-1, 3}, {3, -4}});
        PropagationView v(f.clauses, {}, f.numVars);
        PairProbeReport r = probe_pair(v, 1, 2);
        ctx.require(r.conflictCount == 0 && r.units == std::vector<Literal>{Literal::positive(3)} &&
                        r.binaries.empty(),
                    "zero-conflict branch");
        ctx.require(entailed(f, clause({3})), "zero-conflict unit entailment");
    }
    {  // one conflict
        Formula f = formula({{-1, -2, 3}, {-1, -2, -3}});
        PropagationView v(f.clauses, {}, f.numVars);
        PairProbeReport r = probe_pair(v, 1, 2);
        ctx.require(r.conflictCount == 1 && r.units.empty() && r.binaries.size() == 1 &&
                        r.binaries[0] == clause({-1, -2}),
                    "one-conflict branch");
        ctx.require(entailed(f, clause({-1, -2})), "one-conflict binary entailment");
    }
    {  // two conflicts, no shared assumption
        Formula f = formula({{1, 2, 3}, {1, 2, -3}, {-1, -2, 3}, {-1, -2, -3}});
        PropagationView v(f.clauses, {}, f.numVars);
        PairProbeReport r = probe_pair(v, 1, 2);
        ctx.require(r.conflictCount == 2 && r.units.empty() && r.binaries.size() == 2 &&
                        r.binaries[0] == clause({1, 2}) && r.binaries[1] == clause({-1, -2}),
                    "two-conflict branch");
        ctx.require(entailed(f, clause({1, 2})) && entailed(f, clause({-1, -2})),
                    "two-conflict binary entailment");
    }
    {  // two conflicts sharing an assumption literal
        Formula f = formula({{-1, 2}, {-1, -2}}, 3);
        PropagationView v(f.clauses, {}, f.numVars);
        PairProbeReport r = probe_pair(v, 1, 3);
        ctx.require(r.conflictCount == 2 && r.binaries.empty() &&
                        r.units == std::vector<Literal>{Literal::negative(1)},
                    "shared two-conflict branch");
        ctx.require(entailed(f, clause({-1})), "shared two-conflict unit entailment");
    }
    {  // three conflicts
        Formula f = formula({{1, 2}, {-1, 3}, {-1, -3}});
        PropagationView v(f.clauses, {}, f.numVars);
        PairProbeReport r = probe_pair(v, 1, 2);
        ctx.require(r.conflictCount == 3 && r.units.size() == 2 &&
                        r.units[0] == Literal::negative(1) && r.units[1] == Literal::positive(2),
                    "three-conflict branch");
        ctx.require(entailed(f, clause({-1})) && entailed(f, clause({2})),
                    "three-conflict unit entailment");
    }
    {  // four conflicts
        Formula f = formula({{1, 2}, {-1, 2}, {-2, 3}, {-2, -3}});
        PropagationView v(f.clauses, {}, f.numVars);
        PairProbeReport r = probe_pair(v, 1, 2);
        ctx.require(r.conflictCount == 4 && r.unsatisfiable, "four-conflict branch");
        ctx.require(!brute_force_sat(f).satisfiable, "four-conflict oracle agreement");
    }
}

// ---------------------------------------------------------------- criterion 5

void direction_of_effect(CheckContext& ctx) {
    const fs::path dir = fs::path(RANGER_INSTANCE_DIR) / "unsat50";
    auto files = list_cnf_files(dir);
    ctx.require(files.size() == 10, "expected 10 bundled instances under " + dir.string());
    if (files.size() != 10) return;

    BenchConfig config;
    config.variants = {Variant::Original, Variant::Upla};
    for (std::uint64_t s = 1; s <= 10; ++s) config.seeds.push_back(s);
    config.params.maxTries = 1;
    config.params.maxSteps = 1000000;
    config.params.timeoutSecs = 0.0;
    config.jobs = 8;

    auto records = run_benchmark(files, config);
    std::vector<RunRecord> original, upla;
    for (const RunRecord& r : records)
        (r.variant == Variant::Original ? original : upla).push_back(r);

    try {
        const std::uint64_t medOriginal = aggregate_iterations(original);
        const std::uint64_t medUpla = aggregate_iterations(upla);
        ctx.detail << "median iterations: original=" << medOriginal << " upla=" << medUpla;
        ctx.require(medUpla < medOriginal,
                    "look-ahead did not reduce the pooled median iteration count");
    } catch (const EmptySetError&) {
        ctx.require(false, "a variant had no successful runs");
    }
}

// ---------------------------------------------------------------- criterion 6

void extension_safety(CheckContext& ctx) {
    RandomSource rng(606);
    int violations = 0;
    for (int i = 0; i < 100; ++i) {
        const int n = 3 + static_cast<int>(rng.index(8));
        Formula f = generate_uniform_3sat(n, 2 + rng.index(3 * static_cast<std::size_t>(n)), rng);
        const bool before = brute_force_sat(f).satisfiable;

        const int v1 = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(n)));
        int v2 = v1;
        while (v2 == v1) v2 = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(n)));
        Literal l1 = rng.coin(0.5) ? Literal::positive(v1) : Literal::negative(v1);
        Literal l2 = rng.coin(0.5) ? Literal::positive(v2) : Literal::negative(v2);
        apply_extension(f, l1, l2);
        if (brute_force_sat(f).satisfiable != before) ++violations;
    }
    ctx.require(violations == 0, std::to_string(violations) + " equisatisfiability violations");
}

// ---------------------------------------------------------------- criterion 7

void scoring_oracle(CheckContext& ctx) {
    RandomSource rng(707);

    // independent re-accumulation, 1e-12 relative tolerance
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 4 + static_cast<int>(rng.index(7));
        Formula f;
        f.numVars = n;
        const std::size_t m = 6 + rng.index(16);
        while (f.clauses.size() < m) {
            const std::size_t width = 1 + rng.index(3);
            std::vector<Literal> lits;
            for (std::size_t i = 0; i < width; ++i) {
                const int var = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(n)));
                lits.push_back(rng.coin(0.5) ? Literal::positive(var) : Literal::negative(var));
            }
            Clause c(std::move(lits));
            if (!is_tautology(c)) f.clauses.push_back(std::move(c));
        }

        ScoreTable table = compute_pair_scores(f);
        std::size_t checked = 0;
        for (const auto& [pair, score] : table.pairScores) {
            double reference = 0.0;
            for (const Clause& c : f.clauses)
                if (c.width() >= 2 && c.contains(pair.first) && c.contains(pair.second))
                    reference += pair_weight(c.width());
            if (std::abs(score - reference) > 1e-12 * std::max(1.0, std::abs(reference))) {
                ctx.require(false, "score mismatch beyond 1e-12");
                return;
            }
            ++checked;
        }
        ctx.require(checked == table.pairScores.size(), "re-accumulation skipped pairs");
    }

    // exact integer cross-check of ranking invariance for n <= 20
    const std::uint64_t lcm = 232792560;  // lcm(1..20)
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 5 + static_cast<int>(rng.index(16));
        Formula f = generate_uniform_3sat(n, 20 + rng.index(20), rng);

        std::map<LiteralPair, std::pair<std::uint64_t, std::uint64_t>> exact;
        for (const Clause& c : f.clauses) {
            const auto len = static_cast<std::uint64_t>(c.width());
            const std::uint64_t normTerm =
                (std::uint64_t{1} << (n - len)) * (lcm / (len * (len - 1)));
            const std::uint64_t unnormTerm =
                (std::uint64_t{1} << (n - 1 - len)) * (lcm / (len * (len - 1)));
            auto lits = c.literals();
            for (std::size_t i = 0; i < lits.size(); ++i)
                for (std::size_t j = i + 1; j < lits.size(); ++j) {
                    auto& e = exact[LiteralPair(lits[i], lits[j])];
                    e.first += normTerm;
                    e.second += unnormTerm;
                }
        }
        for (const auto& [ka, a] : exact)
            for (const auto& [kb, b] : exact) {
                const bool normLess = a.first < b.first;
                const bool unnormLess = a.second < b.second;
                if (normLess != unnormLess) {
                    ctx.require(false, "normalization changed a pair ordering");
                    return;
                }
            }
    }
}

// ---------------------------------------------------------------- criterion 8

void bounded_memory(CheckContext& ctx) {
    RandomSource gen(808);
    int violations = 0;
    for (Variant variant : {Variant::Original, Variant::Upla}) {
        // a ratio the look-ahead cannot decide quickly, so the instrumented
        // walk really covers the full step budget
        Formula f = variant == Variant::Original ? generate_uniform_3sat(50, 218, gen)
                                                 : generate_uniform_3sat(50, 150, gen);
        SolverParams p;
        p.variant = variant;
        p.maxTries = 1;
        p.maxSteps = 100000;
        p.timeoutSecs = 0.0;
        p.seed = 4242;
        const std::size_t k = resolved_working_size(p, f.numVars);
        const std::size_t w = resolved_max_width(p, f.numVars);

        StepInspector inspector;
        inspector.afterStep = [&](const SolverState& s) {
            if (s.working.size() != k) ++violations;
        };
        inspector.onResolventStored = [&](const Clause& c) {
            if (c.width() > w) ++violations;
        };
        RunResult res = run(f, p, inspector);
        ctx.detail << variant_token(variant) << ": " << res.iterations << " steps; ";
        ctx.require(res.iterations == 100000,
                    variant_token(variant) + " run ended before the full step budget");
    }
    ctx.require(violations == 0, std::to_string(violations) + " invariant violations");
}

// ---------------------------------------------------------------- criterion 9

std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// stdout of a CLI invocation, with every seconds field masked so the
/// comparison covers the deterministic parts only (wall time is physical).
std::string masked_cli_output(const std::string& args, const fs::path& outFile) {
    const std::string cmd =
        shell_quote(RANGER_CLI_PATH) + " " + args + " > " + shell_quote(outFile.string()) +
        " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    (void)rc;  // solver exit codes encode verdicts; the comparison reads the files

    std::istringstream in(read_file(outFile));
    std::ostringstream masked;
    std::string line;
    while (std::getline(in, line)) {
        // stats line: mask the seconds=... token
        auto pos = line.find(" seconds=");
        if (pos != std::string::npos) {
            auto end = line.find(' ', pos + 1);
            line = line.substr(0, pos) + " seconds=*" +
                   (end == std::string::npos ? "" : line.substr(end));
        }
        // CSV row: mask the fifth field
        int commas = 0;
        for (char ch : line)
            if (ch == ',') ++commas;
        if (commas == 5) {
            std::size_t from = 0;
            for (int i = 0; i < 4; ++i) from = line.find(',', from) + 1;
            const std::size_t to = line.find(',', from);
            line = line.substr(0, from) + "*" + line.substr(to);
        }
        masked << line << '\n';
    }
    return masked.str();
}

void determinism(CheckContext& ctx) {
    const fs::path work = fs::temp_directory_path() / "ranger_acceptance_det";
    fs::create_directories(work);

    // two small instance files, one also used as a bench directory
    {
        RandomSource rng(909);
        Formula a = generate_uniform_3sat(12, 50, rng);
        std::ofstream fa(work / "a.cnf");
        write_dimacs(a, fa);
        Formula b = generate_uniform_3sat(10, 42, rng);
        std::ofstream fb(work / "b.cnf");
        write_dimacs(b, fb);
    }

    std::vector<std::string> configs;
    int idx = 0;
    for (const char* variant : {"original", "upla", "upla-er"})
        for (int seed : {1, 2})
            configs.push_back("solve " + shell_quote((work / "a.cnf").string()) + " --variant " +
                              variant + " --seed " + std::to_string(seed) +
                              " --max-steps 20000 --max-tries 2 --timeout 0");
    for (const char* variant : {"original", "upla", "upla-er"})
        for (int seed : {3, 7})
            configs.push_back("solve " + shell_quote((work / "b.cnf").string()) + " --variant " +
                              variant + " --seed " + std::to_string(seed) +
                              " --max-steps 15000 --pi 0.3 --pg 0.8 --timeout 0");
    for (int seeds : {2, 3})
        for (const char* variants : {"original", "original,upla", "upla-er", "upla"})
            configs.push_back("bench " + shell_quote(work.string()) + " --variants " + variants +
                              " --seeds " + std::to_string(seeds) +
                              " --max-steps 8000 --max-tries 1 --timeout 0");

    ctx.require(configs.size() == 20, "expected 20 configurations");
    for (const std::string& cfg : configs) {
        const fs::path o1 = work / ("out1_" + std::to_string(idx) + ".txt");
        const fs::path o2 = work / ("out2_" + std::to_string(idx) + ".txt");
        const std::string first = masked_cli_output(cfg, o1);
        const std::string second = masked_cli_output(cfg, o2);
        if (first != second || first.empty()) {
            ctx.require(false, "output diverged for configuration " + std::to_string(idx));
            return;
        }
        ++idx;
    }
    fs::remove_all(work);
}

// --------------------------------------------------------------- criterion 10

void statistics_pipeline(CheckContext& ctx) {
    auto rec = [](const char* inst, Verdict v, double secs, std::uint64_t iters) {
        return RunRecord{inst, Variant::Original, 1, v, secs, iters};
    };

    std::vector<RunRecord> one{rec("a", Verdict::Unsatisfiable, 2.0, 10),
                               rec("a", Verdict::Unsatisfiable, 4.0, 30),
                               rec("a", Verdict::Unknown, 1000.0, 99)};
    ctx.require(aggregate_time(one) == 3.0, "per-instance mean over successful runs");

    std::vector<RunRecord> two{rec("a", Verdict::Unsatisfiable, 1.0, 10),
                               rec("b", Verdict::Unsatisfiable, 3.0, 20)};
    ctx.require(aggregate_time(two) == 2.0, "unweighted mean over instances");

    std::vector<RunRecord> med{rec("a", Verdict::Unsatisfiable, 1.0, 10),
                               rec("a", Verdict::Unsatisfiable, 1.0, 30),
                               rec("b", Verdict::Unsatisfiable, 1.0, 20)};
    ctx.require(aggregate_iterations(med) == 20, "odd-count median");

    std::vector<RunRecord> evenCount{rec("a", Verdict::Unsatisfiable, 1.0, 10),
                                     rec("a", Verdict::Unsatisfiable, 1.0, 20)};
    ctx.require(aggregate_iterations(evenCount) == 10, "even count takes the lower middle");

    std::vector<RunRecord> allFailed{rec("a", Verdict::Unknown, 1.0, 10)};
    bool threw = false;
    try {
        aggregate_time(allFailed);
    } catch (const EmptySetError&) {
        threw = true;
    }
    ctx.require(threw, "all-failed set must raise EmptySetError");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budgetSecs;
        std::function<void(CheckContext&)> fn;
    };
    const std::vector<Criterion> criteria{
        {1, "soundness suite (200 mixed instances, 3 variants)", 120, soundness_suite},
        {2, "convergence smoke (tiny refutations, 10 seeds)", 5, convergence_smoke},
        {3, "look-ahead worked examples", 60, upla_worked_examples},
        {4, "five pair-probe conflict scenarios", 60, five_scenarios},
        {5, "look-ahead cuts median iterations on the bundled corpus", 600, direction_of_effect},
        {6, "extension equisatisfiability (100 random cases)", 120, extension_safety},
        {7, "pair-score re-accumulation and ranking invariance", 120, scoring_oracle},
        {8, "bounded memory over 1e5 instrumented steps", 300, bounded_memory},
        {9, "byte-identical reruns across processes (20 configs)", 300, determinism},
        {10, "statistics aggregation fixtures", 60, statistics_pipeline},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        CheckContext ctx;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.fn(ctx);
        } catch (const std::exception& e) {
            ctx.require(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budgetSecs)
            ctx.require(false, "exceeded the " + std::to_string(c.budgetSecs) + "s budget");

        std::printf("%s  %2d. %s (%.1fs)%s%s\n", ctx.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                    ctx.detail.tellp() > 0 ? " -- " : "", ctx.detail.str().c_str());
        if (!ctx.ok) ++failures;
    }
    if (failures) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    else std::printf("all %zu criteria passed\n", criteria.size());
    return failures;
}
