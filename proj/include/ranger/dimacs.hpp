#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ranger/formula.hpp"

namespace ranger {

enum class DimacsErrorKind {
    MalformedHeader,
    LiteralOutOfRange,
    UnterminatedClause,
    ClauseCountMismatch,
    BadToken,
    Io,
};

class DimacsError : public std::runtime_error {
public:
    DimacsError(DimacsErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    DimacsErrorKind kind() const { return kind_; }

private:
    DimacsErrorKind kind_;
};

enum class ParseMode { Strict, Lenient };

struct InstanceMeta {
    std::string name;
    int declaredVars = 0;
    long declaredClauses = 0;
    std::vector<std::string> warnings;  // populated in lenient mode
};

struct ParsedCnf {
    Formula formula;
    InstanceMeta meta;
};

/// Parse a DIMACS CNF stream. Comment lines (`c ...`) are skipped, a `%`
/// token ends the clause section (some benchmark archives append one), and
/// duplicate literals within a clause are collapsed. Tautologous input
/// clauses are kept as-is. Strict mode rejects literals above the declared
/// variable count and clause-count mismatches; lenient mode records
/// warnings instead and grows the variable count as needed.
inline ParsedCnf parse_dimacs(std::istream& in, ParseMode mode = ParseMode::Strict,
                              std::string name = "") {
    ParsedCnf out;
    out.meta.name = std::move(name);

    bool headerSeen = false;
    bool done = false;
    int maxVarSeen = 0;
    std::vector<Literal> pending;
    std::string token;

    auto parseInt = [&](const std::string& tok, long& value) {
        const char* first = tok.data();
        const char* last = tok.data() + tok.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        return ec == std::errc() && ptr == last;
    };

    while (!done && in >> token) {
        if (token[0] == 'c') {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (token == "%") break;
        if (token == "p") {
            if (headerSeen)
                throw DimacsError(DimacsErrorKind::MalformedHeader, "duplicate problem line");
            std::string fmt;
            long vars = -1, cls = -1;
            if (!(in >> fmt) || fmt != "cnf" || !(in >> vars) || !(in >> cls) || vars < 0 || cls < 0)
                throw DimacsError(DimacsErrorKind::MalformedHeader,
                                  "expected 'p cnf <vars> <clauses>'");
            headerSeen = true;
            out.meta.declaredVars = static_cast<int>(vars);
            out.meta.declaredClauses = cls;
            out.formula.numVars = out.meta.declaredVars;
            out.formula.clauses.reserve(static_cast<std::size_t>(cls));
            continue;
        }

        long value = 0;
        if (!parseInt(token, value))
            throw DimacsError(DimacsErrorKind::BadToken, "unexpected token '" + token + "'");
        if (!headerSeen)
            throw DimacsError(DimacsErrorKind::MalformedHeader,
                              "clause data before the problem line");

        if (value == 0) {
            out.formula.clauses.emplace_back(std::move(pending));
            pending.clear();
            continue;
        }

        long var = value < 0 ? -value : value;
        if (var > out.meta.declaredVars) {
            if (mode == ParseMode::Strict)
                throw DimacsError(DimacsErrorKind::LiteralOutOfRange,
                                  "literal " + token + " exceeds declared variable count");
            out.meta.warnings.push_back("literal " + token + " exceeds declared variable count");
        }
        maxVarSeen = std::max(maxVarSeen, static_cast<int>(var));
        pending.push_back(Literal(static_cast<int>(value)));
    }

    if (!headerSeen)
        throw DimacsError(DimacsErrorKind::MalformedHeader, "missing problem line");
    if (!pending.empty())
        throw DimacsError(DimacsErrorKind::UnterminatedClause,
                          "clause not terminated by 0 at end of input");

    out.formula.numVars = std::max(out.formula.numVars, maxVarSeen);

    if (static_cast<long>(out.formula.clauses.size()) != out.meta.declaredClauses) {
        std::string msg = "declared " + std::to_string(out.meta.declaredClauses) +
                          " clauses but found " + std::to_string(out.formula.clauses.size());
        if (mode == ParseMode::Strict)
            throw DimacsError(DimacsErrorKind::ClauseCountMismatch, msg);
        out.meta.warnings.push_back(msg);
    }
    return out;
}

inline ParsedCnf parse_dimacs(const std::string& text, ParseMode mode = ParseMode::Strict,
                              std::string name = "") {
    std::istringstream in(text);
    return parse_dimacs(in, mode, std::move(name));
}

inline ParsedCnf parse_dimacs_file(const std::filesystem::path& path,
                                   ParseMode mode = ParseMode::Strict) {
    std::ifstream in(path);
    if (!in) throw DimacsError(DimacsErrorKind::Io, "cannot open " + path.string());
    return parse_dimacs(in, mode, path.stem().string());
}

/// Emit DIMACS CNF, LF line endings. Round-trips the clause multiset.
inline void write_dimacs(const Formula& f, std::ostream& os) {
    os << "p cnf " << f.numVars << ' ' << f.numClauses() << '\n';
    for (const Clause& c : f.clauses) {
        for (Literal l : c.literals()) os << l.encoded() << ' ';
        os << "0\n";
    }
}

inline std::string write_dimacs(const Formula& f) {
    std::ostringstream os;
    write_dimacs(f, os);
    return os.str();
}

}  // namespace ranger
