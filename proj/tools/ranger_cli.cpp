// Command-line front end: solve a single instance, benchmark a directory of
// instances, generate uniform random 3-SAT, or run the brute-force oracle.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ranger/ranger.hpp"

namespace {

struct ParamFlags {
    ranger::SolverParams params;
    long long pairBudget = -1;  // -1 means all pairs
    bool lenient = false;

    void apply() {
        if (pairBudget >= 0)
            params.pairProbeBudget = static_cast<std::size_t>(pairBudget);
        else
            params.pairProbeBudget = ranger::SolverParams::kAllPairs;
    }

    ranger::ParseMode parseMode() const {
        return lenient ? ranger::ParseMode::Lenient : ranger::ParseMode::Strict;
    }
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
    cmd->add_option("--pi", f.params.importProb, "Probability of importing a formula clause");
    cmd->add_option("--pt", f.params.transformProb, "Probability of the transformation phase");
    cmd->add_option("--pg", f.params.greedyProb, "Probability of greedy resolvent placement");
    cmd->add_option("--per", f.params.extResProb, "Probability of extended resolution per phase");
    cmd->add_option("--width", f.params.maxWidth, "Resolvent width cap (0 = variable count)");
    cmd->add_option("--k", f.params.workingSize, "Working set size (0 = variable count + 1)");
    cmd->add_option("--max-tries", f.params.maxTries, "Restart count");
    cmd->add_option("--max-steps", f.params.maxSteps, "Iterations per restart");
    cmd->add_option("--seed", f.params.seed, "Random seed");
    cmd->add_option("--timeout", f.params.timeoutSecs, "Wall-clock timeout in seconds (0 = none)");
    cmd->add_option("--pair-budget", f.pairBudget, "Cap on probed variable pairs (-1 = all)");
    cmd->add_option("--er-threshold", f.params.erFailureThreshold,
                    "Failed improvements before an extension fires");
    cmd->add_flag("--lenient", f.lenient, "Tolerate header mismatches when parsing");
}

int exit_code(ranger::Verdict v) {
    switch (v) {
        case ranger::Verdict::Unsatisfiable: return 20;
        case ranger::Verdict::Satisfiable: return 10;
        case ranger::Verdict::Unknown: return 0;
    }
    return 0;
}

int cmd_solve(const std::string& file, ParamFlags& flags, const std::string& variantToken) {
    flags.apply();
    flags.params.variant = ranger::parse_variant(variantToken);

    ranger::ParsedCnf parsed = ranger::parse_dimacs_file(file, flags.parseMode());
    for (const std::string& w : parsed.meta.warnings) std::cout << "c warning: " << w << '\n';
    for (const std::string& w :
         ranger::check_convergence_params(flags.params, parsed.formula.numVars))
        std::cout << "c warning: " << w << '\n';

    ranger::RunResult res = ranger::run(parsed.formula, flags.params);
    std::cout << "s " << ranger::verdict_token(res.verdict) << '\n';
    std::cout << "c iterations=" << res.iterations
              << " seconds=" << ranger::format_seconds(res.elapsedSecs)
              << " decided_by=" << ranger::decided_by_token(res.decidedBy) << '\n';
    return exit_code(res.verdict);
}

int cmd_gen(int vars, std::size_t clauses, std::uint64_t seed, const std::string& outFile) {
    ranger::RandomSource rng(seed);
    ranger::Formula f = ranger::generate_uniform_3sat(vars, clauses, rng);
    if (outFile.empty()) {
        ranger::write_dimacs(f, std::cout);
    } else {
        std::ofstream out(outFile);
        if (!out) {
            std::cerr << "error: cannot open " << outFile << " for writing\n";
            return 1;
        }
        ranger::write_dimacs(f, out);
    }
    return 0;
}

int cmd_oracle(const std::string& file, bool lenient) {
    ranger::ParsedCnf parsed = ranger::parse_dimacs_file(
        file, lenient ? ranger::ParseMode::Lenient : ranger::ParseMode::Strict);
    ranger::OracleResult res = ranger::brute_force_sat(parsed.formula);
    if (!res.satisfiable) {
        std::cout << "s UNSATISFIABLE\n";
        return 20;
    }
    std::cout << "s SATISFIABLE\n";
    std::cout << "v";
    for (int v = 1; v <= parsed.formula.numVars; ++v) {
        bool pos = res.model->value(v) == ranger::Ternary::True;
        std::cout << ' ' << (pos ? v : -v);
    }
    std::cout << " 0\n";
    return 10;
}

int cmd_bench(const std::string& dir, ParamFlags& flags, const std::string& variantsCsv,
              std::uint64_t seeds, std::size_t jobs) {
    flags.apply();

    ranger::BenchConfig config;
    config.params = flags.params;
    config.jobs = jobs;
    config.parseMode = flags.parseMode();

    std::string token;
    std::istringstream vs(variantsCsv);
    while (std::getline(vs, token, ','))
        if (!token.empty()) config.variants.push_back(ranger::parse_variant(token));
    if (config.variants.empty()) {
        std::cerr << "error: no variants given\n";
        return 1;
    }
    for (std::uint64_t i = 0; i < seeds; ++i) config.seeds.push_back(flags.params.seed + i);

    auto files = ranger::list_cnf_files(dir);
    if (files.empty()) {
        std::cerr << "error: no .cnf files in " << dir << '\n';
        return 1;
    }
    auto records = ranger::run_benchmark(files, config);
    ranger::write_csv(records, std::cout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic local-search refutation engine for propositional CNF"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "Solve one DIMACS CNF instance");
    std::string solveFile;
    std::string variantToken = "upla";
    ParamFlags solveFlags;
    solve->add_option("file", solveFile, "DIMACS CNF file")->required();
    solve->add_option("--variant", variantToken, "original | upla | upla-er");
    add_param_flags(solve, solveFlags);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a uniform random 3-SAT instance");
    int genVars = 50;
    std::size_t genClauses = 218;
    std::uint64_t genSeed = 1;
    std::string genOut;
    gen->add_option("--vars", genVars, "Variable count (>= 3)")->required();
    gen->add_option("--clauses", genClauses, "Clause count")->required();
    gen->add_option("--seed", genSeed, "Random seed");
    gen->add_option("-o,--output", genOut, "Output file (default stdout)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Brute-force satisfiability check (<= 25 vars)");
    std::string oracleFile;
    bool oracleLenient = false;
    oracle->add_option("file", oracleFile, "DIMACS CNF file")->required();
    oracle->add_flag("--lenient", oracleLenient, "Tolerate header mismatches when parsing");

    // bench
    auto* bench = app.add_subcommand("bench", "Benchmark a directory of CNF instances (CSV)");
    std::string benchDir;
    std::string variantsCsv = "original,upla,upla-er";
    std::uint64_t benchSeeds = 10;
    std::size_t benchJobs = 1;
    ParamFlags benchFlags;
    bench->add_option("dir", benchDir, "Directory of .cnf files")->required();
    bench->add_option("--variants", variantsCsv, "Comma-separated variant list");
    bench->add_option("--seeds", benchSeeds, "Number of seeds (base taken from --seed)");
    bench->add_option("--jobs", benchJobs, "Worker pool size");
    add_param_flags(bench, benchFlags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    try {
        if (solve->parsed()) return cmd_solve(solveFile, solveFlags, variantToken);
        if (gen->parsed()) return cmd_gen(genVars, genClauses, genSeed, genOut);
        if (oracle->parsed()) return cmd_oracle(oracleFile, oracleLenient);
        if (bench->parsed()) return cmd_bench(benchDir, benchFlags, variantsCsv, benchSeeds, benchJobs);
    } catch (const ranger::DimacsError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
