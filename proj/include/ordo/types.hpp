#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace ordo {

// Atom identifiers follow the numeric input formats: positive 64-bit integers.
using AtomId = std::int64_t;

struct Literal {
    AtomId atom     = 0;
    bool   negative = false;

    [[nodiscard]] Literal complement() const { return {atom, !negative}; }

    friend auto operator<=>(const Literal&, const Literal&) = default;
};

inline Literal pos(AtomId a) { return {a, false}; }
inline Literal neg(AtomId a) { return {a, true}; }

/////////////////////////////////////////////////////////////////////////////////////////
// CNF side
/////////////////////////////////////////////////////////////////////////////////////////

// Literal order inside a clause is significant for output, never for semantics.
// Duplicate and complementary literals are tolerated and preserved.
struct Clause {
    std::vector<Literal> literals;

    friend bool operator==(const Clause&, const Clause&) = default;
};

struct CnfFormula {
    std::int64_t        declared_atom_count   = 0;
    std::int64_t        declared_clause_count = 0;
    std::vector<Clause> clauses;

    [[nodiscard]] AtomId max_atom_id() const {
        AtomId m = declared_atom_count;
        for (const auto& c : clauses) {
            for (const auto& l : c.literals) {
                if (l.atom > m) { m = l.atom; }
            }
        }
        return m;
    }

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/////////////////////////////////////////////////////////////////////////////////////////
// Ground ASP side
/////////////////////////////////////////////////////////////////////////////////////////

enum class AggregateKind { count, sum };

struct WeightedLiteral {
    std::int64_t weight = 1;
    Literal      literal;

    friend bool operator==(const WeightedLiteral&, const WeightedLiteral&) = default;
};

// A named aggregate atom: head_id is the numeric identifier under which rule
// bodies refer to the expression "kind{w1:l1,...} >= bound".
struct AggregateDef {
    AtomId                       head_id = 0;
    AggregateKind                kind    = AggregateKind::sum;
    std::int64_t                 bound   = 0;
    std::vector<WeightedLiteral> elements;

    friend bool operator==(const AggregateDef&, const AggregateDef&) = default;
};

// Bodies keep the file layout: negative atoms first, positive atoms second,
// each in input order. A missing head makes the rule a constraint.
struct NormalRule {
    std::optional<AtomId> head;
    std::vector<AtomId>   pos_body;
    std::vector<AtomId>   neg_body;

    [[nodiscard]] bool is_constraint() const { return !head.has_value(); }

    friend bool operator==(const NormalRule&, const NormalRule&) = default;
};

struct DisjunctiveRule {
    std::vector<AtomId> heads;
    std::vector<AtomId> pos_body;
    std::vector<AtomId> neg_body;

    friend bool operator==(const DisjunctiveRule&, const DisjunctiveRule&) = default;
};

struct ChoiceRule {
    std::vector<AtomId> heads;
    std::vector<AtomId> pos_body;
    std::vector<AtomId> neg_body;

    friend bool operator==(const ChoiceRule&, const ChoiceRule&) = default;
};

// Statement with an unrecognised type id, carried verbatim and never scored.
struct OpaqueStatement {
    std::vector<std::int64_t> tokens;

    friend bool operator==(const OpaqueStatement&, const OpaqueStatement&) = default;
};

using Statement = std::variant<NormalRule, DisjunctiveRule, ChoiceRule, AggregateDef, OpaqueStatement>;

struct AspProgram {
    std::vector<Statement>      statements;
    std::map<AtomId, std::string> symbol_table;
    // Raw text after the symbol table terminator (B+/B- sections, model count).
    std::string compute_sections;

    [[nodiscard]] AtomId max_atom_id() const;

    friend bool operator==(const AspProgram&, const AspProgram&) = default;
};

struct Interpretation {
    std::set<AtomId> true_atoms;

    [[nodiscard]] bool contains(AtomId a) const { return true_atoms.count(a) != 0; }

    friend bool operator==(const Interpretation&, const Interpretation&) = default;
    friend bool operator<(const Interpretation& a, const Interpretation& b) { return a.true_atoms < b.true_atoms; }
};

// Uniform head/body view over the three plain rule forms; nullopt for
// aggregate definitions and opaque statements.
struct RuleParts {
    std::vector<AtomId>        heads;
    const std::vector<AtomId>* pos_body  = nullptr;
    const std::vector<AtomId>* neg_body  = nullptr;
    bool                       is_choice = false;
};

std::optional<RuleParts> rule_parts(const Statement& stmt);

} // namespace ordo
