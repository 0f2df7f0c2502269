#pragma once

#include <ordo/diagnostics.hpp>
#include <ordo/types.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ordo {

// Reads a ground program in smodels numeric form. Statement lines are decoded
// by their leading rule type id:
//
//   1 head #lits #neg neg... pos...            normal rule; head 0 encodes a constraint
//   2 head #lits #neg bound neg... pos...      count aggregate definition
//   3 #heads heads... #lits #neg neg... pos... choice rule
//   5 head bound #lits #neg neg... pos... w... sum aggregate definition
//   8 #heads heads... #lits #neg neg... pos... disjunctive rule
//
// The rule section ends at a lone 0, then the symbol table ("id name" lines,
// 0-terminated) and finally the compute sections, which are carried verbatim.
// Unknown type ids become OpaqueStatements with a warning.
std::pair<AspProgram, ParseDiagnostics> parse_smodels(const std::string& text, bool strict = false);

// Statements in sequence order in the numeric layout above, "0", the symbol
// table in ascending id order, "0", then the compute sections verbatim.
// Byte-deterministic.
std::string write_smodels(const AspProgram& program);

// Numeric encoding of one statement, exactly as written by write_smodels.
std::vector<std::int64_t> statement_tokens(const Statement& stmt);

// The concatenated statement encodings; what "rule-section token identity"
// compares.
std::vector<std::int64_t> rule_section_tokens(const AspProgram& program);

} // namespace ordo
