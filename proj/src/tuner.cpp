#include <ordo/tuner.hpp>

#include <ordo/errors.hpp>
#include <ordo/textio.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace ordo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// non-finite costs poison variance computations inside the forest
double model_cost(double cost) { return std::isfinite(cost) ? cost : 1e12; }

} // namespace

ParameterSpace ParameterSpace::sat() {
    ParameterSpace space;
    for (const char* name : {"size", "bin", "ter", "positive", "negative", "bin_neg", "only_one_neg",
                             "occ", "occ_avg", "occ_bin", "occ_ter", "occ_pos", "occ_neg",
                             "occ_all_pos", "occ_all_neg"}) {
        space.continuous.push_back({name, -10.0, 10.0});
    }
    space.categorical.push_back({"ord_lit", {0, 1}});
    space.categorical.push_back({"ord_cl", {0, 1, 2}});
    return space;
}

ParameterSpace ParameterSpace::asp() {
    ParameterSpace space;
    for (const char* name :
         {"head_occ", "body_occ", "pos_body_occ", "neg_body_occ", "short_body_occ",
          "short_pos_body_occ", "short_neg_body_occ", "aggregate_occ", "constraints", "normal",
          "disjunctive", "choice", "body", "p_body", "n_body", "ratio_pos_neg", "horn", "rec_head",
          "rec_body", "short", "aggregate", "aggregate_size", "aggregate_ratio_bound_size"}) {
        space.continuous.push_back({name, -10.0, 10.0});
    }
    return space;
}

double Incumbent::mean() const {
    if (costs.empty()) { return kInf; }
    double s = 0;
    for (const double c : costs) { s += c; }
    return s / static_cast<double>(costs.size());
}

Configuration default_configuration(const ParameterSpace& space) {
    Configuration config;
    for (const auto& dim : space.continuous) {
        config.values[dim.name] = std::clamp(0.0, dim.low, dim.high);
    }
    for (const auto& dim : space.categorical) {
        config.values[dim.name] = static_cast<double>(dim.values.front());
    }
    return config;
}

Configuration sample_configuration(const ParameterSpace& space, std::mt19937_64& rng) {
    Configuration config;
    for (const auto& dim : space.continuous) {
        std::uniform_real_distribution<double> dist(dim.low, dim.high);
        config.values[dim.name] = dist(rng);
    }
    for (const auto& dim : space.categorical) {
        std::uniform_int_distribution<std::size_t> dist(0, dim.values.size() - 1);
        config.values[dim.name] = static_cast<double>(dim.values[dist(rng)]);
    }
    return config;
}

void validate_configuration(const ParameterSpace& space, const Configuration& config) {
    for (const auto& dim : space.continuous) {
        const auto it = config.values.find(dim.name);
        if (it == config.values.end() || it->second < dim.low || it->second > dim.high) {
            throw PreconditionError("configuration violates range of '" + dim.name + "'");
        }
    }
    for (const auto& dim : space.categorical) {
        const auto it = config.values.find(dim.name);
        if (it == config.values.end() ||
            std::find(dim.values.begin(), dim.values.end(), static_cast<int>(it->second)) ==
                dim.values.end()) {
            throw PreconditionError("configuration violates domain of '" + dim.name + "'");
        }
    }
}

std::vector<double> flatten_configuration(const ParameterSpace& space, const Configuration& config) {
    std::vector<double> out;
    out.reserve(space.continuous.size() + space.categorical.size());
    for (const auto& dim : space.continuous) { out.push_back(config.values.at(dim.name)); }
    for (const auto& dim : space.categorical) {
        const auto v = static_cast<int>(config.values.at(dim.name));
        for (const int allowed : dim.values) { out.push_back(allowed == v ? 1.0 : 0.0); }
    }
    return out;
}

/////////////////////////////////////////////////////////////////////////////////////////
// Checkpoint log
/////////////////////////////////////////////////////////////////////////////////////////

std::string format_observation(const Observation& obs) {
    std::string out;
    bool        first = true;
    for (const auto& [name, value] : obs.config.values) {
        if (!first) { out += ','; }
        first = false;
        char buf[64];
        const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), value);
        out += name + "=" + std::string(buf, p);
    }
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), obs.cost);
    out += "\t" + obs.instance + "\t" + std::string(buf, p) + "\n";
    return out;
}

TuneHistory parse_tune_log(const std::string& text) {
    TuneHistory        history;
    std::istringstream in(text);
    std::string        raw;
    int                line = 0;
    auto to_double = [](const std::string& s, int at) {
        double      v    = 0;
        const char* last = s.data() + s.size();
        const auto [p, ec] = std::from_chars(s.data(), last, v);
        if (ec != std::errc() || p != last) {
            throw ParseError(at, "bad numeric value '" + s + "'");
        }
        return v;
    };
    while (std::getline(in, raw)) {
        ++line;
        if (raw.empty()) { continue; }
        const std::size_t tab1 = raw.find('\t');
        const std::size_t tab2 = tab1 == std::string::npos ? std::string::npos : raw.find('\t', tab1 + 1);
        if (tab2 == std::string::npos) {
            throw ParseError(line, "expected 'config<TAB>instance<TAB>cost'");
        }
        Observation obs;
        obs.instance = raw.substr(tab1 + 1, tab2 - tab1 - 1);
        obs.cost     = to_double(raw.substr(tab2 + 1), line);
        std::istringstream cfg(raw.substr(0, tab1));
        std::string        pair;
        while (std::getline(cfg, pair, ',')) {
            const std::size_t eq = pair.find('=');
            if (eq == std::string::npos) {
                throw ParseError(line, "bad configuration entry '" + pair + "'");
            }
            obs.config.values[pair.substr(0, eq)] = to_double(pair.substr(eq + 1), line);
        }
        history.push_back(std::move(obs));
    }
    return history;
}

/////////////////////////////////////////////////////////////////////////////////////////
// Search
/////////////////////////////////////////////////////////////////////////////////////////

namespace {

struct Session {
    const Objective&   objective;
    TuneHistory        history;
    int                evals_used = 0;
    int                budget;
    const std::string* checkpoint;

    double evaluate(const Configuration& config, const std::string& instance) {
        double cost;
        try {
            cost = objective(config, instance);
        }
        catch (...) {
            cost = kInf;
        }
        history.push_back({config, instance, cost});
        ++evals_used;
        if (checkpoint && !checkpoint->empty()) {
            append_file(*checkpoint, format_observation(history.back()));
        }
        return cost;
    }

    [[nodiscard]] bool exhausted() const { return evals_used >= budget; }
};

// preloaded checkpoint lines count against the budget
Session make_session(const Objective& objective, int budget, const TuneOptions& options) {
    Session session{objective, {}, 0, budget, &options.checkpoint_path};
    if (!options.checkpoint_path.empty() && file_exists(options.checkpoint_path)) {
        session.history    = parse_tune_log(read_file(options.checkpoint_path));
        session.evals_used = static_cast<int>(session.history.size());
    }
    return session;
}

double mean_cost_of(const TuneHistory& history, const Configuration& config) {
    double sum = 0;
    int    n   = 0;
    for (const auto& obs : history) {
        if (obs.config == config) {
            sum += obs.cost;
            ++n;
        }
    }
    return n == 0 ? kInf : sum / n;
}

TuneResult result_from(Session& session, const Configuration& best) {
    const double mean = mean_cost_of(session.history, best);
    return {best, std::move(session.history), mean};
}

} // namespace

TuneResult random_search(const ParameterSpace& space, const Objective& objective,
                         const std::vector<std::string>& train_instances, int eval_budget,
                         std::uint64_t seed, const TuneOptions& options) {
    if (eval_budget < 1 || train_instances.empty()) {
        throw PreconditionError("random_search needs a budget >= 1 and at least one instance");
    }
    Session         session = make_session(objective, eval_budget, options);
    std::mt19937_64 rng(seed);

    Configuration best;
    double        best_mean = kInf;
    bool          have_best = false;
    while (!session.exhausted()) {
        const Configuration config = sample_configuration(space, rng);
        double              sum    = 0;
        int                 n      = 0;
        for (const auto& instance : train_instances) {
            if (session.exhausted()) { break; }
            sum += session.evaluate(config, instance);
            ++n;
        }
        if (n == 0) { break; }
        const double mean = sum / n;
        if (!have_best || mean < best_mean) {
            best      = config;
            best_mean = mean;
            have_best = true;
        }
    }
    if (!have_best) {
        // budget was consumed entirely by a preloaded checkpoint
        for (const auto& obs : session.history) {
            const double mean = mean_cost_of(session.history, obs.config);
            if (!have_best || mean < best_mean) {
                best      = obs.config;
                best_mean = mean;
                have_best = true;
            }
        }
    }
    TuneResult result = result_from(session, best);
    result.best_mean_cost = best_mean;
    return result;
}

namespace {

double evaluate_guarded(const Objective& objective, const Configuration& config,
                        const std::string& instance) {
    try {
        return objective(config, instance);
    }
    catch (...) {
        return kInf;
    }
}

} // namespace

IntensifyResult intensify(const Configuration& challenger, const Incumbent& incumbent,
                          const Objective& objective, int max_evals, TuneHistory* history,
                          int jobs) {
    IntensifyResult result{incumbent, false, 0};
    if (incumbent.instances.empty()) { return result; }

    std::vector<double> challenger_costs;
    std::size_t         target = 1;
    for (;;) {
        // fill the current doubling step, capped by the remaining budget
        const std::size_t upto =
            std::min({target, incumbent.instances.size(),
                      challenger_costs.size() +
                          static_cast<std::size_t>(std::max(0, max_evals - result.evals_used))});
        const std::size_t first = challenger_costs.size();
        challenger_costs.resize(upto);
        if (jobs <= 1 || upto - first <= 1) {
            for (std::size_t k = first; k < upto; ++k) {
                challenger_costs[k] = evaluate_guarded(objective, challenger, incumbent.instances[k]);
            }
        }
        else {
            std::vector<std::thread> pool;
            std::atomic<std::size_t> next{first};
            const int                workers = std::min<int>(jobs, static_cast<int>(upto - first));
            for (int w = 0; w < workers; ++w) {
                pool.emplace_back([&]() {
                    for (;;) {
                        const std::size_t k = next.fetch_add(1);
                        if (k >= upto) { return; }
                        challenger_costs[k] =
                            evaluate_guarded(objective, challenger, incumbent.instances[k]);
                    }
                });
            }
            for (auto& t : pool) { t.join(); }
        }
        for (std::size_t k = first; k < upto; ++k) {
            ++result.evals_used;
            if (history) {
                history->push_back({challenger, incumbent.instances[k], challenger_costs[k]});
            }
        }
        if (challenger_costs.size() < std::min(target, incumbent.instances.size())) {
            return result; // budget gone, keep the incumbent
        }
        double chal_sum = 0, inc_sum = 0;
        for (std::size_t k = 0; k < challenger_costs.size(); ++k) {
            chal_sum += challenger_costs[k];
            inc_sum += incumbent.costs[k];
        }
        if (!(chal_sum < inc_sum)) { return result; } // ties favour the incumbent
        if (challenger_costs.size() == incumbent.instances.size()) {
            result.incumbent = {challenger, incumbent.instances, std::move(challenger_costs)};
            result.replaced  = true;
            return result;
        }
        target *= 2;
    }
}

TuneResult smbo_search(const ParameterSpace& space, const Objective& objective,
                       const std::vector<std::string>& train_instances, int eval_budget,
                       std::uint64_t seed, const TuneOptions& options) {
    if (eval_budget < 1 || train_instances.empty()) {
        throw PreconditionError("smbo_search needs a budget >= 1 and at least one instance");
    }
    Session         session = make_session(objective, eval_budget, options);
    std::mt19937_64 rng(seed ^ 0xabcdef12345678ull);

    Incumbent incumbent;
    incumbent.config = default_configuration(space);
    if (!session.history.empty()) {
        // resume: adopt the preloaded configuration with the best mean cost
        double best_mean = kInf;
        for (const auto& obs : session.history) {
            const double mean = mean_cost_of(session.history, obs.config);
            if (mean < best_mean) {
                best_mean        = mean;
                incumbent.config = obs.config;
            }
        }
        for (const auto& obs : session.history) {
            if (obs.config == incumbent.config) {
                incumbent.instances.push_back(obs.instance);
                incumbent.costs.push_back(obs.cost);
            }
        }
    }
    if (incumbent.instances.empty()) {
        if (session.exhausted()) { return result_from(session, incumbent.config); }
        const double cost = session.evaluate(incumbent.config, train_instances.front());
        incumbent.instances.push_back(train_instances.front());
        incumbent.costs.push_back(cost);
    }

    std::vector<double> trace{incumbent.mean()};
    while (!session.exhausted()) {
        // widen the incumbent's instance coverage before challenging it
        if (incumbent.instances.size() < train_instances.size()) {
            const std::string& instance = train_instances[incumbent.instances.size()];
            const double       cost     = session.evaluate(incumbent.config, instance);
            incumbent.instances.push_back(instance);
            incumbent.costs.push_back(cost);
            if (session.exhausted()) { break; }
        }

        std::vector<std::vector<double>> x;
        std::vector<double>              y;
        x.reserve(session.history.size());
        y.reserve(session.history.size());
        for (const auto& obs : session.history) {
            x.push_back(flatten_configuration(space, obs.config));
            y.push_back(model_cost(obs.cost));
        }
        const RegressionForest model = RegressionForest::fit(x, y, options.forest, rng());

        Configuration challenger;
        double        best_acq  = kInf;
        auto          consider  = [&](const Configuration& candidate) {
            const auto [mean, spread] = model.predict(flatten_configuration(space, candidate));
            const double acq          = mean - options.kappa * spread;
            if (acq < best_acq) {
                best_acq   = acq;
                challenger = candidate;
            }
        };
        for (int k = 0; k < options.pool_uniform; ++k) { consider(sample_configuration(space, rng)); }
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int k = 0; k < options.pool_perturbations; ++k) {
            Configuration candidate = incumbent.config;
            for (const auto& dim : space.continuous) {
                const double sigma = options.perturb_sigma_frac * (dim.high - dim.low);
                candidate.values[dim.name] =
                    std::clamp(candidate.values[dim.name] + sigma * gauss(rng), dim.low, dim.high);
            }
            std::uniform_real_distribution<double> coin(0.0, 1.0);
            for (const auto& dim : space.categorical) {
                if (coin(rng) < 0.2) {
                    std::uniform_int_distribution<std::size_t> dist(0, dim.values.size() - 1);
                    candidate.values[dim.name] = static_cast<double>(dim.values[dist(rng)]);
                }
            }
            consider(candidate);
        }

        TuneHistory     raced;
        IntensifyResult race = intensify(challenger, incumbent, objective,
                                         session.budget - session.evals_used, &raced, options.jobs);
        for (const auto& obs : raced) {
            session.history.push_back(obs);
            ++session.evals_used;
            if (session.checkpoint && !session.checkpoint->empty()) {
                append_file(*session.checkpoint, format_observation(obs));
            }
        }
        incumbent = std::move(race.incumbent);
        trace.push_back(incumbent.mean());
    }
    TuneResult result      = result_from(session, incumbent.config);
    result.best_mean_cost  = incumbent.mean();
    result.incumbent_trace = std::move(trace);
    return result;
}

} // namespace ordo
