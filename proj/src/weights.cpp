#include <ordo/weights.hpp>

#include <ordo/errors.hpp>

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ordo {

namespace {

constexpr double kWeightLow  = -10.0;
constexpr double kWeightHigh = +10.0;

double checked_weight(const std::string& name, double v) {
    if (!(v >= kWeightLow && v <= kWeightHigh)) {
        throw Error("weight '" + name + "' = " + std::to_string(v) + " is outside [-10, +10]");
    }
    return v;
}

int checked_selector(const std::string& name, double v, int max_value) {
    const double r = std::round(v);
    if (r != v || r < 0 || r > max_value) {
        throw Error("selector '" + name + "' must be an integer in [0, " + std::to_string(max_value) + "]");
    }
    return static_cast<int>(r);
}

double checked_constant(const std::string& name, double v) {
    if (!(v > 0)) {
        throw Error("constant '" + name + "' must be positive");
    }
    return v;
}

using Setter = std::function<void(const std::string&, double)>;

void assign_entries(const std::vector<std::pair<std::string, double>>& entries,
                    const std::map<std::string, Setter>&               fields) {
    std::set<std::string> seen;
    for (const auto& [name, value] : entries) {
        const auto it = fields.find(name);
        if (it == fields.end()) {
            throw Error("unknown weight name '" + name + "'");
        }
        if (!seen.insert(name).second) {
            throw Error("duplicate weight name '" + name + "'");
        }
        it->second(name, value);
    }
}

std::map<std::string, Setter> sat_fields(SatWeights& w) {
    auto cont = [](double& slot) {
        return Setter([&slot](const std::string& n, double v) { slot = checked_weight(n, v); });
    };
    return {
        {"size", cont(w.size)},
        {"bin", cont(w.bin)},
        {"ter", cont(w.ter)},
        {"positive", cont(w.positive)},
        {"negative", cont(w.negative)},
        {"bin_neg", cont(w.bin_neg)},
        {"only_one_neg", cont(w.only_one_neg)},
        {"occ", cont(w.occ)},
        {"occ_avg", cont(w.occ_avg)},
        {"occ_bin", cont(w.occ_bin)},
        {"occ_ter", cont(w.occ_ter)},
        {"occ_pos", cont(w.occ_pos)},
        {"occ_neg", cont(w.occ_neg)},
        {"occ_all_pos", cont(w.occ_all_pos)},
        {"occ_all_neg", cont(w.occ_all_neg)},
        {"ord_lit", Setter([&w](const std::string& n, double v) { w.ord_lit = checked_selector(n, v, 1); })},
        {"ord_cl", Setter([&w](const std::string& n, double v) { w.ord_cl = checked_selector(n, v, 2); })},
    };
}

std::map<std::string, Setter> asp_fields(AspWeightFile& f) {
    auto cont = [](double& slot) {
        return Setter([&slot](const std::string& n, double v) { slot = checked_weight(n, v); });
    };
    auto constant = [](double& slot) {
        return Setter([&slot](const std::string& n, double v) { slot = checked_constant(n, v); });
    };
    AspWeights& w = f.weights;
    return {
        {"head_occ", cont(w.head_occ)},
        {"body_occ", cont(w.body_occ)},
        {"pos_body_occ", cont(w.pos_body_occ)},
        {"neg_body_occ", cont(w.neg_body_occ)},
        {"short_body_occ", cont(w.short_body_occ)},
        {"short_pos_body_occ", cont(w.short_pos_body_occ)},
        {"short_neg_body_occ", cont(w.short_neg_body_occ)},
        {"aggregate_occ", cont(w.aggregate_occ)},
        {"constraints", cont(w.constraints)},
        {"normal", cont(w.normal)},
        {"disjunctive", cont(w.disjunctive)},
        {"choice", cont(w.choice)},
        {"body", cont(w.body)},
        {"p_body", cont(w.p_body)},
        {"n_body", cont(w.n_body)},
        {"ratio_pos_neg", cont(w.ratio_pos_neg)},
        {"horn", cont(w.horn)},
        {"rec_head", cont(w.rec_head)},
        {"rec_body", cont(w.rec_body)},
        {"short", cont(w.short_rule)},
        {"aggregate", cont(w.aggregate)},
        {"aggregate_size", cont(w.aggregate_size)},
        {"aggregate_ratio_bound_size", cont(w.aggregate_ratio_bound_size)},
        {"t1", constant(f.constants.t1)},
        {"t2", constant(f.constants.t2)},
    };
}

std::vector<std::pair<std::string, double>> parse_entries(const std::string& text) {
    std::vector<std::pair<std::string, double>> out;
    std::istringstream                          in(text);
    std::string                                 raw;
    int                                         line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) { raw.erase(hash); }
        std::istringstream ls(raw);
        std::string        name, value, extra;
        if (!(ls >> name)) { continue; }
        if (!(ls >> value) || (ls >> extra)) {
            throw ParseError(line, "expected 'name value'");
        }
        double      v     = 0;
        const char* last  = value.data() + value.size();
        const auto  [p, ec] = std::from_chars(value.data(), last, v);
        if (ec != std::errc() || p != last) {
            throw ParseError(line, "bad numeric value '" + value + "'");
        }
        out.emplace_back(name, v);
    }
    return out;
}

std::string format_value(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

} // namespace

SatWeights sat_weights_from_entries(const std::vector<std::pair<std::string, double>>& entries) {
    SatWeights w;
    assign_entries(entries, sat_fields(w));
    return w;
}

AspWeightFile asp_weights_from_entries(const std::vector<std::pair<std::string, double>>& entries) {
    AspWeightFile f;
    assign_entries(entries, asp_fields(f));
    return f;
}

SatWeights parse_sat_weights(const std::string& text) { return sat_weights_from_entries(parse_entries(text)); }

AspWeightFile parse_asp_weights(const std::string& text) {
    return asp_weights_from_entries(parse_entries(text));
}

std::vector<std::pair<std::string, double>> sat_weight_entries(const SatWeights& w) {
    return {
        {"size", w.size},
        {"bin", w.bin},
        {"ter", w.ter},
        {"positive", w.positive},
        {"negative", w.negative},
        {"bin_neg", w.bin_neg},
        {"only_one_neg", w.only_one_neg},
        {"occ", w.occ},
        {"occ_avg", w.occ_avg},
        {"occ_bin", w.occ_bin},
        {"occ_ter", w.occ_ter},
        {"occ_pos", w.occ_pos},
        {"occ_neg", w.occ_neg},
        {"occ_all_pos", w.occ_all_pos},
        {"occ_all_neg", w.occ_all_neg},
        {"ord_lit", static_cast<double>(w.ord_lit)},
        {"ord_cl", static_cast<double>(w.ord_cl)},
    };
}

std::vector<std::pair<std::string, double>> asp_weight_entries(const AspWeights& w,
                                                               const ScoringConstants& consts) {
    return {
        {"head_occ", w.head_occ},
        {"body_occ", w.body_occ},
        {"pos_body_occ", w.pos_body_occ},
        {"neg_body_occ", w.neg_body_occ},
        {"short_body_occ", w.short_body_occ},
        {"short_pos_body_occ", w.short_pos_body_occ},
        {"short_neg_body_occ", w.short_neg_body_occ},
        {"aggregate_occ", w.aggregate_occ},
        {"constraints", w.constraints},
        {"normal", w.normal},
        {"disjunctive", w.disjunctive},
        {"choice", w.choice},
        {"body", w.body},
        {"p_body", w.p_body},
        {"n_body", w.n_body},
        {"ratio_pos_neg", w.ratio_pos_neg},
        {"horn", w.horn},
        {"rec_head", w.rec_head},
        {"rec_body", w.rec_body},
        {"short", w.short_rule},
        {"aggregate", w.aggregate},
        {"aggregate_size", w.aggregate_size},
        {"aggregate_ratio_bound_size", w.aggregate_ratio_bound_size},
        {"t1", consts.t1},
        {"t2", consts.t2},
    };
}

namespace {

std::string write_entries(const std::vector<std::pair<std::string, double>>& entries) {
    std::string out;
    for (const auto& [name, value] : entries) {
        out += name;
        out += ' ';
        out += format_value(value);
        out += '\n';
    }
    return out;
}

} // namespace

std::string write_sat_weights(const SatWeights& w) { return write_entries(sat_weight_entries(w)); }

std::string write_asp_weights(const AspWeights& w, const ScoringConstants& consts) {
    return write_entries(asp_weight_entries(w, consts));
}

} // namespace ordo
