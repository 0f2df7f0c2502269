#pragma once

#include <ordo/types.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace ordo {

/////////////////////////////////////////////////////////////////////////////////////////
// Shortcut elimination
/////////////////////////////////////////////////////////////////////////////////////////

// count{l1,...,ln} >= b  becomes  sum{1:l1,...,1:ln} >= b. Idempotent.
AggregateDef count_to_sum(const AggregateDef& agg);

// Hands out atom ids that are unused anywhere in the originating program.
class IdAllocator {
public:
    explicit IdAllocator(AtomId first_free) : next_(first_free) {}
    static IdAllocator after(const AspProgram& program);

    AtomId fresh();

private:
    AtomId next_;
};

// {p1,...,pm} <- B  becomes one rule  pi v pi' <- B  per head atom, with every
// pi' fresh and distinct.
std::vector<DisjunctiveRule> expand_choice(const ChoiceRule& rule, IdAllocator& ids);

// Replaces every choice rule by its expansion, in place in the statement order.
AspProgram expand_all_choices(const AspProgram& program);

/////////////////////////////////////////////////////////////////////////////////////////
// Satisfaction
/////////////////////////////////////////////////////////////////////////////////////////

bool satisfies(const Interpretation& i, const Literal& l);
bool satisfies(const Interpretation& i, const Clause& c);
bool satisfies(const Interpretation& i, const CnfFormula& cnf);

// Aggregate truth is defined by its elements: satisfied iff the weights of the
// satisfied element literals reach the bound. The program supplies definitions
// for element literals that themselves name aggregate atoms.
bool satisfies(const Interpretation& i, const AggregateDef& agg, const AspProgram& context);

// Rule satisfaction. Aggregate definitions are evaluated as their expression,
// choice rules and opaque statements are vacuously satisfied.
bool satisfies(const Interpretation& i, const Statement& stmt, const AspProgram& context);
bool satisfies_body(const Interpretation& i, const Statement& stmt, const AspProgram& context);

bool satisfies(const Interpretation& i, const AspProgram& program);

/////////////////////////////////////////////////////////////////////////////////////////
// Reduct and brute-force oracles
/////////////////////////////////////////////////////////////////////////////////////////

// Keeps exactly the rules whose body i satisfies, heads and bodies unchanged.
// Aggregate definitions are carried along as evaluation context; opaque
// statements are dropped. Choice rules must have been expanded beforehand.
AspProgram reduct(const AspProgram& program, const Interpretation& i);

// All interpretations over the occurring atoms that satisfy the formula.
std::set<Interpretation> enumerate_models(const CnfFormula& cnf, int atom_cap = 20);

// Bulk variant: each model as a bit mask over `atoms` (sorted ascending).
std::vector<std::uint32_t> enumerate_model_masks(const CnfFormula& cnf, std::vector<AtomId>& atoms,
                                                 int atom_cap = 20);

// All stable models: interpretations i that satisfy the program such that no
// proper subset of i models reduct(program, i). Choice rules are expanded
// internally and the result is projected back onto the original atoms.
std::set<Interpretation> enumerate_stable_models(const AspProgram& program, int atom_cap = 16);

/////////////////////////////////////////////////////////////////////////////////////////
// Dependency graph
/////////////////////////////////////////////////////////////////////////////////////////

struct DependencyGraph {
    std::vector<AtomId>                   nodes; // sorted ascending
    std::map<AtomId, std::vector<AtomId>> arcs;  // head atom -> body atoms
};

// Nodes are the occurring atoms including aggregate identifiers; one arc per
// rule from each head atom to each underlying body atom, and from each
// aggregate identifier to the atoms of its element literals.
DependencyGraph dependency_graph(const AspProgram& program);

// Atoms in a strongly connected component of size >= 2 or with a self-loop.
std::set<AtomId> recursive_atoms(const AspProgram& program);

/////////////////////////////////////////////////////////////////////////////////////////
// Atom universes
/////////////////////////////////////////////////////////////////////////////////////////

std::set<AtomId> atoms_of(const CnfFormula& cnf);
std::set<AtomId> atoms_of(const AspProgram& program);

// Atom ids used as aggregate identifiers, mapped to their definitions.
std::map<AtomId, const AggregateDef*> aggregate_index(const AspProgram& program);

} // namespace ordo
