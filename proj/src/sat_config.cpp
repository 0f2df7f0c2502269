#include <ordo/sat_config.hpp>

#include <algorithm>
#include <numeric>

namespace ordo {

CnfStats compute_stats(const CnfFormula& cnf) {
    CnfStats stats;
    stats.atom.resize(static_cast<std::size_t>(cnf.max_atom_id()) + 1);
    stats.clause.reserve(cnf.clauses.size());
    std::vector<std::int64_t> size_sum(stats.atom.size(), 0);

    for (const auto& c : cnf.clauses) {
        ClauseStats cs;
        cs.size = static_cast<std::int64_t>(c.literals.size());
        for (const auto& l : c.literals) { (l.negative ? cs.negative : cs.positive)++; }
        cs.bin          = cs.size == 2;
        cs.ter          = cs.size == 3;
        cs.bin_neg      = cs.bin && cs.negative == 2;
        cs.only_one_neg = cs.negative == 1;
        const bool all_pos = cs.size > 0 && cs.negative == 0;
        const bool all_neg = cs.size > 0 && cs.positive == 0;

        for (const auto& l : c.literals) {
            AtomStats& as = stats.atom[static_cast<std::size_t>(l.atom)];
            as.occ++;
            size_sum[static_cast<std::size_t>(l.atom)] += cs.size;
            if (cs.bin) { as.occ_bin++; }
            if (cs.ter) { as.occ_ter++; }
            (l.negative ? as.occ_neg : as.occ_pos)++;
            if (all_pos) { as.occ_all_pos++; }
            if (all_neg) { as.occ_all_neg++; }
        }
        stats.clause.push_back(cs);
    }
    for (std::size_t a = 1; a < stats.atom.size(); ++a) {
        if (stats.atom[a].occ > 0) {
            stats.atom[a].occ_avg =
                static_cast<double>(size_sum[a]) / static_cast<double>(stats.atom[a].occ);
        }
    }
    return stats;
}

double atom_score(AtomId p, const CnfStats& stats, const SatWeights& w) {
    const AtomStats& a = stats.atom[static_cast<std::size_t>(p)];
    return static_cast<double>(a.occ) * w.occ + a.occ_avg * w.occ_avg +
           static_cast<double>(a.occ_bin) * w.occ_bin + static_cast<double>(a.occ_ter) * w.occ_ter +
           static_cast<double>(a.occ_pos) * w.occ_pos + static_cast<double>(a.occ_neg) * w.occ_neg +
           static_cast<double>(a.occ_all_pos) * w.occ_all_pos +
           static_cast<double>(a.occ_all_neg) * w.occ_all_neg;
}

namespace {

double atom_score_sum(const Clause& cl, const CnfStats& stats, const SatWeights& w) {
    double s = 0;
    for (const auto& l : cl.literals) { s += atom_score(l.atom, stats, w); }
    return s;
}

double clause_feature_sum(const ClauseStats& c, const SatWeights& w, bool weighted) {
    if (weighted) {
        return static_cast<double>(c.size) * w.size + (c.bin ? w.bin : 0.0) + (c.ter ? w.ter : 0.0) +
               static_cast<double>(c.positive) * w.positive +
               static_cast<double>(c.negative) * w.negative + (c.bin_neg ? w.bin_neg : 0.0) +
               (c.only_one_neg ? w.only_one_neg : 0.0);
    }
    return static_cast<double>(c.size) + (c.bin ? 1.0 : 0.0) + (c.ter ? 1.0 : 0.0) +
           static_cast<double>(c.positive) + static_cast<double>(c.negative) +
           (c.bin_neg ? 1.0 : 0.0) + (c.only_one_neg ? 1.0 : 0.0);
}

double clause_score_at(const CnfFormula& cnf, std::size_t idx, const CnfStats& stats,
                       const SatWeights& w, ClauseFeatureBlend blend) {
    const Clause&      cl = cnf.clauses[idx];
    const ClauseStats& cs = stats.clause[idx];
    switch (w.ord_cl) {
        case 0 : return atom_score_sum(cl, stats, w);
        case 1 : return clause_feature_sum(cs, w, true);
        default:
            return atom_score_sum(cl, stats, w) +
                   clause_feature_sum(cs, w, blend == ClauseFeatureBlend::weighted);
    }
}

} // namespace

double clause_score(const Clause& cl, const CnfStats& stats, const SatWeights& w,
                    ClauseFeatureBlend blend) {
    CnfFormula one;
    one.clauses.push_back(cl);
    // clause criteria depend only on the clause itself; atom criteria on the
    // stats that were computed for the enclosing formula
    const CnfStats local = compute_stats(one);
    switch (w.ord_cl) {
        case 0 : return atom_score_sum(cl, stats, w);
        case 1 : return clause_feature_sum(local.clause[0], w, true);
        default:
            return atom_score_sum(cl, stats, w) +
                   clause_feature_sum(local.clause[0], w, blend == ClauseFeatureBlend::weighted);
    }
}

CnfFormula reorder_cnf(const CnfFormula& cnf, const SatWeights& w, ClauseFeatureBlend blend) {
    const CnfStats stats = compute_stats(cnf);

    std::vector<std::size_t> order(cnf.clauses.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> score(cnf.clauses.size());
    for (std::size_t k = 0; k < cnf.clauses.size(); ++k) {
        score[k] = clause_score_at(cnf, k, stats, w, blend);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&score](std::size_t a, std::size_t b) { return score[a] > score[b]; });

    CnfFormula out;
    out.declared_atom_count   = cnf.declared_atom_count;
    out.declared_clause_count = cnf.declared_clause_count;
    out.clauses.reserve(cnf.clauses.size());
    for (const std::size_t k : order) { out.clauses.push_back(cnf.clauses[k]); }

    if (w.ord_lit == 1) {
        for (auto& cl : out.clauses) {
            std::stable_sort(cl.literals.begin(), cl.literals.end(),
                             [&](const Literal& a, const Literal& b) {
                                 return atom_score(a.atom, stats, w) > atom_score(b.atom, stats, w);
                             });
        }
    }
    return out;
}

} // namespace ordo
