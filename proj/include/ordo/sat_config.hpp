#pragma once

#include <ordo/types.hpp>
#include <ordo/weights.hpp>

#include <vector>

namespace ordo {

// Occurrence-level counts: a duplicated literal inside a clause counts every
// time it appears, which keeps occ = occ_pos + occ_neg on any input.
struct AtomStats {
    std::int64_t occ = 0, occ_bin = 0, occ_ter = 0, occ_pos = 0, occ_neg = 0;
    std::int64_t occ_all_pos = 0, occ_all_neg = 0;
    double       occ_avg = 0; // 0 for atoms occurring in no clause
};

struct ClauseStats {
    std::int64_t size = 0, positive = 0, negative = 0;
    bool         bin = false, ter = false, bin_neg = false, only_one_neg = false;
};

struct CnfStats {
    std::vector<AtomStats>   atom;   // indexed by atom id; [0] unused
    std::vector<ClauseStats> clause; // parallel to the formula's clause sequence
};

// Single pass over the formula.
CnfStats compute_stats(const CnfFormula& cnf);

// Weighted sum of the eight atom criteria.
double atom_score(AtomId p, const CnfStats& stats, const SatWeights& w);

// How the clause-criterion sum enters the score when ord_cl = 2: multiplied
// by its weights (default) or added raw.
enum class ClauseFeatureBlend { weighted, raw };

// ord_cl = 0: sum of the atom scores of the clause's literals;
// ord_cl = 1: weighted sum of the seven clause criteria;
// ord_cl = 2: both terms added.
double clause_score(const Clause& cl, const CnfStats& stats, const SatWeights& w,
                    ClauseFeatureBlend blend = ClauseFeatureBlend::weighted);

// Clauses stably sorted by descending clause score; with ord_lit = 1 the
// literals of every clause are stably sorted by descending atom score. All
// scores are computed against the input formula; the header is unchanged.
CnfFormula reorder_cnf(const CnfFormula& cnf, const SatWeights& w,
                       ClauseFeatureBlend blend = ClauseFeatureBlend::weighted);

} // namespace ordo
