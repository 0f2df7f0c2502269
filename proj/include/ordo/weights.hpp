#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ordo {

// Clause-ordering criteria (size..only_one_neg), atom-ordering criteria
// (occ..occ_all_neg), and the two categorical selectors. Continuous weights
// live in [-10, +10]; ord_lit in {0,1}; ord_cl in {0,1,2}.
struct SatWeights {
    double size = 0, bin = 0, ter = 0, positive = 0, negative = 0, bin_neg = 0, only_one_neg = 0;
    double occ = 0, occ_avg = 0, occ_bin = 0, occ_ter = 0, occ_pos = 0, occ_neg = 0;
    double occ_all_pos = 0, occ_all_neg = 0;
    int    ord_lit = 0;
    int    ord_cl  = 0;
};

// The 23 rule/aggregate ordering weights, in [-10, +10] each.
struct AspWeights {
    double head_occ = 0, body_occ = 0, pos_body_occ = 0, neg_body_occ = 0;
    double short_body_occ = 0, short_pos_body_occ = 0, short_neg_body_occ = 0, aggregate_occ = 0;
    double constraints = 0, normal = 0, disjunctive = 0, choice = 0;
    double body = 0, p_body = 0, n_body = 0, ratio_pos_neg = 0, horn = 0;
    double rec_head = 0, rec_body = 0, short_rule = 0; // weight-file key: "short"
    double aggregate = 0, aggregate_size = 0, aggregate_ratio_bound_size = 0;
};

// Priority multipliers for choice rules (t1) and aggregates (t2).
struct ScoringConstants {
    double t1 = 1e4;
    double t2 = 1e4;
};

struct AspWeightFile {
    AspWeights       weights;
    ScoringConstants constants;
};

// Weight files are flat "name value" lines; '#' starts a comment. Keys absent
// from the file keep their defaults (0 for weights, 1e4 for t1/t2); unknown
// keys, out-of-range values and duplicates are errors.
SatWeights    parse_sat_weights(const std::string& text);
AspWeightFile parse_asp_weights(const std::string& text);

std::string write_sat_weights(const SatWeights& w);
std::string write_asp_weights(const AspWeights& w, const ScoringConstants& consts);

// Same validation on already-split entries; the tuner exchanges
// configurations through this form.
SatWeights    sat_weights_from_entries(const std::vector<std::pair<std::string, double>>& entries);
AspWeightFile asp_weights_from_entries(const std::vector<std::pair<std::string, double>>& entries);

std::vector<std::pair<std::string, double>> sat_weight_entries(const SatWeights& w);
std::vector<std::pair<std::string, double>> asp_weight_entries(const AspWeights& w,
                                                               const ScoringConstants& consts);

} // namespace ordo
