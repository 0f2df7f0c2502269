#pragma once

#include <ordo/types.hpp>
#include <ordo/weights.hpp>

#include <set>
#include <vector>

namespace ordo {

// Per-atom occurrence counts over the program's plain rules and aggregate
// definitions. Membership is polarity-interpreted: "occurs in the negative
// body" means the atom appears negated there. Each rule counts at most once
// per feature; "short" bodies have at most two literals.
struct AtomOccurrences {
    std::int64_t head_occ = 0, body_occ = 0, pos_body_occ = 0, neg_body_occ = 0;
    std::int64_t short_body_occ = 0, short_pos_body_occ = 0, short_neg_body_occ = 0;
    std::int64_t aggregate_occ = 0;
};

struct ProgramIndex {
    std::vector<AtomOccurrences> atom; // indexed by atom id; [0] unused
    std::set<AtomId>             recursive;
    AtomId                       max_id = 0;
};

ProgramIndex index_program(const AspProgram& program);

// Weighted sum of the eight occurrence counts of the literal's atom.
double literal_score(AtomId atom, const ProgramIndex& index, const AspWeights& w);

// Head-arity term (plus the t1 bonus for choice rules), body-size terms,
// positive/negative ratio, Horn and short-rule bonuses, recursive-atom
// counts, and the mean literal score over head and body. Throws on aggregate
// definitions and opaque statements.
double rule_score(const Statement& rule, const ProgramIndex& index, const AspWeights& w,
                  const ScoringConstants& consts);

// t2-weighted aggregate bonus, size and bound/size-ratio terms, and the mean
// element literal score. Throws on an empty element list.
double aggregate_score(const AggregateDef& agg, const ProgramIndex& index, const AspWeights& w,
                       const ScoringConstants& consts);

// rule_score or aggregate_score by statement kind; opaque statements score 0.
double statement_score(const Statement& stmt, const ProgramIndex& index, const AspWeights& w,
                       const ScoringConstants& consts);

// Statements stably sorted by descending score; symbol table and compute
// sections untouched. With pin_opaque, opaque statements keep their absolute
// positions and only the scored statements are reordered around them.
AspProgram reorder_program(const AspProgram& program, const AspWeights& w,
                           const ScoringConstants& consts = {}, bool pin_opaque = false);

// new id for each old id in 1..max_id: atoms sorted by descending literal
// score (ties by ascending old id), the i-th receiving id i. Entry [0] unused.
std::vector<AtomId> id_map_by_score(const AspProgram& program, const AspWeights& w);

// Rewrites every statement payload and the symbol table under the bijection;
// statement order, opaque token payloads and compute sections are untouched.
AspProgram apply_id_map(const AspProgram& program, const std::vector<AtomId>& new_from_old);

std::vector<AtomId> invert_id_map(const std::vector<AtomId>& new_from_old);

AspProgram remap_ids_by_score(const AspProgram& program, const AspWeights& w);

} // namespace ordo
