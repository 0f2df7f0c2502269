#pragma once

#include <ordo/types.hpp>

#include <cstdint>

namespace ordo {

struct SynthParams {
    int pigeons = 1;
    int holes   = 1;
    int colors  = 1;
    int nodes   = 1;
};

// Ground program combining the pigeonhole problem (pigeons x holes, exactly
// one hole per pigeon, no shared holes) with colouring a complete graph
// (nodes x colors). Unsatisfiable when pigeons > holes or nodes > colors, so
// instance hardness is controlled by the parameter gap.
//
// Per pigeon i: a choice rule over in(i,1..h); an "at least two holes"
// count aggregate whose truth is forbidden; an "at least one hole" count
// aggregate whose falsity is forbidden (count rules only express lower
// bounds, so "exactly one" is compiled as these two constraints). Per hole
// and pigeon pair: a binary exclusion constraint. Per node: a disjunction
// over its colours (a plain rule when colors = 1). Per ordered node pair and
// colour: an edge-colour clash constraint. Edge facts for the complete graph.
//
// Atom ids are assigned in generation order; the symbol table names every
// atom: in(i,j), col(i,ck), edge(i,j), atleast1(i), atleast2(i). The seed is
// accepted for interface stability and has no semantic effect.
AspProgram generate_synthetic(const SynthParams& params, std::uint64_t seed = 0);

} // namespace ordo
