#include <ordo/dimacs.hpp>

#include <ordo/errors.hpp>

#include <charconv>
#include <sstream>

namespace ordo {

Literal literal_from_dimacs(std::int64_t token) {
    return token < 0 ? neg(-token) : pos(token);
}

std::int64_t literal_to_dimacs(const Literal& l) { return l.negative ? -l.atom : l.atom; }

namespace {

struct Cursor {
    const std::string& text;
    std::size_t        pos  = 0;
    int                line = 1;

    [[nodiscard]] bool done() const { return pos >= text.size(); }
};

void warn(ParseDiagnostics& diag, int line, const std::string& message) {
    if (diag.strict) {
        throw ParseError(line, message);
    }
    diag.warnings.push_back({line, message});
}

std::int64_t parse_int(const std::string& token, int line) {
    std::int64_t value  = 0;
    const char*  first  = token.data();
    const char*  last   = token.data() + token.size();
    const auto   result = std::from_chars(first, last, value);
    if (result.ec == std::errc::result_out_of_range) {
        throw ParseError(line, "integer out of 64-bit range: " + token);
    }
    if (result.ec != std::errc() || result.ptr != last) {
        throw ParseError(line, "expected an integer, got '" + token + "'");
    }
    return value;
}

// One input line split on whitespace; empty for blank lines.
bool next_line(Cursor& cur, std::vector<std::string>& tokens, int& line_no) {
    if (cur.done()) { return false; }
    line_no               = cur.line;
    const std::size_t end = cur.text.find('\n', cur.pos);
    const std::string raw = cur.text.substr(cur.pos, end == std::string::npos ? std::string::npos : end - cur.pos);
    cur.pos               = end == std::string::npos ? cur.text.size() : end + 1;
    ++cur.line;
    tokens.clear();
    std::istringstream in(raw);
    std::string        t;
    while (in >> t) { tokens.push_back(t); }
    return true;
}

} // namespace

std::pair<CnfFormula, ParseDiagnostics> parse_dimacs(const std::string& text, bool strict) {
    CnfFormula       cnf;
    ParseDiagnostics diag;
    diag.strict = strict;

    Cursor                   cur{text};
    std::vector<std::string> tokens;
    int                      line    = 0;
    bool                     in_body = false;
    Clause                   current;
    bool                     open = false; // literals pending in `current`

    while (next_line(cur, tokens, line)) {
        if (tokens.empty()) { continue; }
        if (tokens[0][0] == 'c') { continue; }
        if (!in_body) {
            if (tokens[0] != "p") {
                throw ParseError(line, "missing DIMACS header 'p cnf <vars> <clauses>'");
            }
            if (tokens.size() != 4 || tokens[1] != "cnf") {
                throw ParseError(line, "malformed DIMACS header");
            }
            cnf.declared_atom_count   = parse_int(tokens[2], line);
            cnf.declared_clause_count = parse_int(tokens[3], line);
            if (cnf.declared_atom_count < 0 || cnf.declared_clause_count < 0) {
                throw ParseError(line, "negative counts in DIMACS header");
            }
            in_body = true;
            continue;
        }
        for (const auto& t : tokens) {
            const std::int64_t v = parse_int(t, line);
            if (v == 0) {
                if (current.literals.empty()) { warn(diag, line, "empty clause"); }
                cnf.clauses.push_back(std::move(current));
                current = Clause{};
                open    = false;
                continue;
            }
            const Literal l = literal_from_dimacs(v);
            if (l.atom > cnf.declared_atom_count) {
                warn(diag, line, "atom " + std::to_string(l.atom) + " exceeds declared count " +
                                     std::to_string(cnf.declared_atom_count));
            }
            current.literals.push_back(l);
            open = true;
        }
    }
    if (!in_body) {
        throw ParseError(line, "missing DIMACS header 'p cnf <vars> <clauses>'");
    }
    if (open) {
        throw ParseError(line, "clause not 0-terminated at end of file");
    }
    if (static_cast<std::int64_t>(cnf.clauses.size()) != cnf.declared_clause_count) {
        warn(diag, line,
             "declared " + std::to_string(cnf.declared_clause_count) + " clauses, found " +
                 std::to_string(cnf.clauses.size()));
    }
    return {std::move(cnf), std::move(diag)};
}

std::string write_dimacs(const CnfFormula& cnf) {
    std::string out;
    out += "p cnf " + std::to_string(cnf.declared_atom_count) + " " +
           std::to_string(cnf.declared_clause_count) + "\n";
    for (const auto& c : cnf.clauses) {
        for (const auto& l : c.literals) {
            out += std::to_string(literal_to_dimacs(l));
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

} // namespace ordo
