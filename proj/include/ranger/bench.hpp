#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ranger/dimacs.hpp"
#include "ranger/engine.hpp"
#include "ranger/params.hpp"

namespace ranger {

class EmptySetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One benchmark run: an instance solved by one variant under one seed.
struct RunRecord {
    std::string instance;
    Variant variant = Variant::Original;
    std::uint64_t seed = 0;
    Verdict verdict = Verdict::Unknown;
    double seconds = 0.0;
    std::uint64_t iterations = 0;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline bool is_successful(const RunRecord& r) { return r.verdict != Verdict::Unknown; }

struct SetSummary {
    std::string setName;
    double pctSolved = 0.0;
    double meanTime = 0.0;
    std::uint64_t medianIterations = 0;
};

/// Two-level time aggregate: for each instance the mean over its successful
/// runs, then the unweighted mean of those per-instance means. Instances
/// without a successful run are excluded; no successful run at all is an
/// error. Summation orders are canonicalized so the result is independent of
/// record order.
inline double aggregate_time(std::span<const RunRecord> records) {
    std::map<std::string, std::vector<double>> byInstance;
    for (const RunRecord& r : records)
        if (is_successful(r)) byInstance[r.instance].push_back(r.seconds);
    if (byInstance.empty()) throw EmptySetError("aggregate_time: no successful run in the set");

    double outerSum = 0.0;
    for (auto& [name, times] : byInstance) {
        std::sort(times.begin(), times.end());
        double sum = 0.0;
        for (double t : times) sum += t;
        outerSum += sum / static_cast<double>(times.size());
    }
    return outerSum / static_cast<double>(byInstance.size());
}

/// Median iteration count pooled over every successful run in the set; even
/// counts take the lower middle value.
inline std::uint64_t aggregate_iterations(std::span<const RunRecord> records) {
    std::vector<std::uint64_t> iters;
    for (const RunRecord& r : records)
        if (is_successful(r)) iters.push_back(r.iterations);
    if (iters.empty()) throw EmptySetError("aggregate_iterations: no successful run in the set");
    std::sort(iters.begin(), iters.end());
    return iters[(iters.size() - 1) / 2];
}

inline double percent_solved(std::span<const RunRecord> records) {
    if (records.empty()) return 0.0;
    std::size_t ok = 0;
    for (const RunRecord& r : records)
        if (is_successful(r)) ++ok;
    return 100.0 * static_cast<double>(ok) / static_cast<double>(records.size());
}

/// Summarize one instance set's records. Throws EmptySetError when the set
/// has no successful run (the time and iteration aggregates are undefined).
inline SetSummary summarize(std::string setName, std::span<const RunRecord> records) {
    return {std::move(setName), percent_solved(records), aggregate_time(records),
            aggregate_iterations(records)};
}

inline constexpr const char* kCsvHeader = "instance,variant,seed,verdict,seconds,iterations";

inline std::string format_seconds(double seconds) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", seconds);
    return buf;
}

inline void write_csv(std::span<const RunRecord> records, std::ostream& os) {
    os << kCsvHeader << '\n';
    for (const RunRecord& r : records) {
        os << r.instance << ',' << variant_token(r.variant) << ',' << r.seed << ','
           << verdict_token(r.verdict) << ',' << format_seconds(r.seconds) << ','
           << r.iterations << '\n';
    }
}

inline std::vector<RunRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader)
        throw std::runtime_error("read_csv: missing or unexpected header");
    std::vector<RunRecord> records;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        RunRecord r;
        std::getline(row, r.instance, ',');
        std::getline(row, field, ',');
        r.variant = parse_variant(field);
        std::getline(row, field, ',');
        r.seed = std::stoull(field);
        std::getline(row, field, ',');
        r.verdict = parse_verdict(field);
        std::getline(row, field, ',');
        r.seconds = std::stod(field);
        std::getline(row, field, ',');
        r.iterations = std::stoull(field);
        records.push_back(std::move(r));
    }
    return records;
}

struct BenchConfig {
    std::vector<Variant> variants;
    std::vector<std::uint64_t> seeds;
    SolverParams params;
    std::size_t jobs = 1;
    ParseMode parseMode = ParseMode::Strict;
};

inline std::vector<std::filesystem::path> list_cnf_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".cnf")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

/// Execute the cross product instances x variants x seeds. Each run is
/// independent; with jobs > 1 runs execute on a small worker pool, and the
/// record order is the task order either way. Instances that fail to parse
/// are reported on stderr and skipped.
inline std::vector<RunRecord> run_benchmark(const std::vector<std::filesystem::path>& files,
                                            const BenchConfig& config) {
    struct Task {
        const Formula* formula;
        std::string instance;
        Variant variant;
        std::uint64_t seed;
    };

    std::vector<Formula> formulas;
    std::vector<std::string> names;
    formulas.reserve(files.size());
    for (const auto& path : files) {
        try {
            ParsedCnf parsed = parse_dimacs_file(path, config.parseMode);
            formulas.push_back(std::move(parsed.formula));
            names.push_back(parsed.meta.name);
        } catch (const DimacsError& e) {
            std::cerr << "c skipping " << path.string() << ": " << e.what() << '\n';
        }
    }

    std::vector<Task> tasks;
    for (std::size_t i = 0; i < formulas.size(); ++i)
        for (Variant v : config.variants)
            for (std::uint64_t seed : config.seeds)
                tasks.push_back({&formulas[i], names[i], v, seed});

    std::vector<RunRecord> records(tasks.size());
    auto runTask = [&](std::size_t t) {
        SolverParams p = config.params;
        p.variant = tasks[t].variant;
        p.seed = tasks[t].seed;
        RunResult res = run(*tasks[t].formula, p);
        records[t] = {tasks[t].instance, tasks[t].variant, tasks[t].seed,
                      res.verdict,       res.elapsedSecs,  res.iterations};
    };

    const std::size_t jobs = std::max<std::size_t>(1, config.jobs);
    if (jobs == 1 || tasks.size() <= 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t) runTask(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const std::size_t workers = std::min(jobs, tasks.size());
        pool.reserve(workers);
        for (std::size_t wId = 0; wId < workers; ++wId) {
            pool.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1))
                    runTask(t);
            });
        }
        for (auto& th : pool) th.join();
    }
    return records;
}

}  // namespace ranger
