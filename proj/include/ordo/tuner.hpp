#pragma once

#include <ordo/forest.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace ordo {

struct ContinuousDim {
    std::string name;
    double      low  = 0;
    double      high = 0;
};

struct CategoricalDim {
    std::string      name;
    std::vector<int> values;
};

struct ParameterSpace {
    std::vector<ContinuousDim>  continuous;
    std::vector<CategoricalDim> categorical;

    // 15 clause/atom weights in [-10,10] plus ord_lit and ord_cl.
    static ParameterSpace sat();
    // the 23 rule/aggregate weights in [-10,10].
    static ParameterSpace asp();
};

// Complete assignment, one value per dimension; categorical values are stored
// as their (integral) value.
struct Configuration {
    std::map<std::string, double> values;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct Observation {
    Configuration config;
    std::string   instance;
    double        cost = 0;
};

using TuneHistory = std::vector<Observation>;

// Per-instance cost of running one configuration; lower is better. Failures
// should surface as an infinite cost rather than an exception.
using Objective = std::function<double(const Configuration&, const std::string& instance)>;

struct Incumbent {
    Configuration            config;
    std::vector<std::string> instances;
    std::vector<double>      costs;

    [[nodiscard]] double mean() const;
};

struct TuneOptions {
    ForestOptions forest;
    double        kappa              = 1.0; // exploration bonus in mean - kappa * spread
    int           pool_uniform       = 100;
    int           pool_perturbations = 20;
    double        perturb_sigma_frac = 0.1; // of each continuous range
    std::string   checkpoint_path;          // optional line-oriented evaluation log
    // concurrent objective evaluations inside one intensify batch; the result
    // is identical for any value when the objective is deterministic
    int jobs = 1;
};

struct TuneResult {
    Configuration best;
    TuneHistory   history;
    double        best_mean_cost = 0;
    // smbo only: the incumbent's mean cost after every iteration
    std::vector<double> incumbent_trace;
};

Configuration default_configuration(const ParameterSpace& space); // all zeros, clamped into range
Configuration sample_configuration(const ParameterSpace& space, std::mt19937_64& rng);
void          validate_configuration(const ParameterSpace& space, const Configuration& config);

// One-hot encodes categorical dimensions after the continuous ones.
std::vector<double> flatten_configuration(const ParameterSpace& space, const Configuration& config);

// Uniform sampling; the best configuration by mean cost over the training
// instances it was evaluated on. Deterministic per seed.
TuneResult random_search(const ParameterSpace& space, const Objective& objective,
                         const std::vector<std::string>& train_instances, int eval_budget,
                         std::uint64_t seed, const TuneOptions& options = {});

// Model-based search: fit a regression forest on the history, pick the
// candidate minimizing mean - kappa * spread from a pool of uniform samples
// and incumbent perturbations, then race it against the incumbent. Anytime:
// interruptible at any iteration, returning the current incumbent.
TuneResult smbo_search(const ParameterSpace& space, const Objective& objective,
                       const std::vector<std::string>& train_instances, int eval_budget,
                       std::uint64_t seed, const TuneOptions& options = {});

struct IntensifyResult {
    Incumbent incumbent;
    bool      replaced   = false;
    int       evals_used = 0;
};

// Races a challenger against the incumbent on the incumbent's instances with
// a doubling schedule: discarded at the first losing mean comparison on the
// shared subset (ties favour the incumbent), promoted only after matching the
// incumbent's evaluation count and still winning. The evaluations of one
// doubling step may run concurrently (jobs > 1).
IntensifyResult intensify(const Configuration& challenger, const Incumbent& incumbent,
                          const Objective& objective, int max_evals, TuneHistory* history,
                          int jobs = 1);

// Checkpoint log: one evaluation per line, "k=v,k=v<TAB>instance<TAB>cost".
TuneHistory parse_tune_log(const std::string& text);
std::string format_observation(const Observation& obs);

} // namespace ordo
