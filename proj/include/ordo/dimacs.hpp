#pragma once

#include <ordo/diagnostics.hpp>
#include <ordo/types.hpp>

#include <string>
#include <utility>

namespace ordo {

// Reads a DIMACS CNF file. Clauses and literals keep file order, comment
// lines are skipped. Count mismatches and out-of-range atom ids are warnings
// in lenient mode and errors in strict mode; a missing header, non-integer
// tokens and an unterminated final clause are always errors.
std::pair<CnfFormula, ParseDiagnostics> parse_dimacs(const std::string& text, bool strict = false);

// Canonical form: header line, one clause per line, single spaces, trailing
// " 0", "\n" endings, no comments. Byte-deterministic.
std::string write_dimacs(const CnfFormula& cnf);

Literal      literal_from_dimacs(std::int64_t token);
std::int64_t literal_to_dimacs(const Literal& l);

} // namespace ordo
