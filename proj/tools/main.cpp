#include <ordo/asp_config.hpp>
#include <ordo/bench.hpp>
#include <ordo/dimacs.hpp>
#include <ordo/errors.hpp>
#include <ordo/sat_config.hpp>
#include <ordo/semantics.hpp>
#include <ordo/smodels.hpp>
#include <ordo/synth.hpp>
#include <ordo/textio.hpp>
#include <ordo/tuner.hpp>
#include <ordo/weights.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <random>

#include <unistd.h>

namespace {

using namespace ordo;

constexpr int kExitOk    = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData  = 2;

// Refuses to clobber an existing output unless --force was given.
void emit_output(const std::string& path, const std::string& content, bool force) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    if (!force && file_exists(path)) {
        throw Error("output '" + path + "' exists, pass --force to overwrite");
    }
    write_file(path, content);
}

void print_warnings(const ParseDiagnostics& diag, const std::string& path) {
    for (const auto& w : diag.warnings) {
        std::cerr << path << ":" << w.line << ": warning: " << w.message << "\n";
    }
}

std::vector<std::string> list_instances(const std::string& dir) {
    std::vector<std::string> out;
    std::error_code          ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        if (entry.is_regular_file()) { out.push_back(entry.path().string()); }
    }
    if (ec) {
        throw Error("cannot list '" + dir + "': " + ec.message());
    }
    if (out.empty()) {
        throw Error("no instances in '" + dir + "'");
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t parse_byte_size(const std::string& text) {
    std::size_t       used  = 0;
    const std::int64_t base = std::stoll(text, &used);
    std::int64_t      scale = 1;
    if (used < text.size()) {
        switch (text[used]) {
            case 'k': case 'K': scale = 1ll << 10; break;
            case 'm': case 'M': scale = 1ll << 20; break;
            case 'g': case 'G': scale = 1ll << 30; break;
            default: throw Error("bad size suffix in '" + text + "'");
        }
    }
    return base * scale;
}

/////////////////////////////////////////////////////////////////////////////////////////
// feature tables
/////////////////////////////////////////////////////////////////////////////////////////

std::string sat_feature_csv(const CnfFormula& cnf) {
    const CnfStats stats = compute_stats(cnf);
    std::string    out   = "atom,occ,occ_avg,occ_bin,occ_ter,occ_pos,occ_neg,occ_all_pos,occ_all_neg\n";
    char           buf[64];
    for (std::size_t a = 1; a < stats.atom.size(); ++a) {
        const AtomStats& s = stats.atom[a];
        std::snprintf(buf, sizeof(buf), "%.4f", s.occ_avg);
        out += std::to_string(a) + "," + std::to_string(s.occ) + "," + buf + "," +
               std::to_string(s.occ_bin) + "," + std::to_string(s.occ_ter) + "," +
               std::to_string(s.occ_pos) + "," + std::to_string(s.occ_neg) + "," +
               std::to_string(s.occ_all_pos) + "," + std::to_string(s.occ_all_neg) + "\n";
    }
    out += "\nclause,size,bin,ter,positive,negative,bin_neg,only_one_neg\n";
    for (std::size_t c = 0; c < stats.clause.size(); ++c) {
        const ClauseStats& s = stats.clause[c];
        out += std::to_string(c + 1) + "," + std::to_string(s.size) + "," + std::to_string(s.bin) +
               "," + std::to_string(s.ter) + "," + std::to_string(s.positive) + "," +
               std::to_string(s.negative) + "," + std::to_string(s.bin_neg) + "," +
               std::to_string(s.only_one_neg) + "\n";
    }
    return out;
}

std::string asp_feature_csv(const AspProgram& program) {
    const ProgramIndex index = index_program(program);
    std::string out = "atom,head_occ,body_occ,pos_body_occ,neg_body_occ,short_body_occ,"
                      "short_pos_body_occ,short_neg_body_occ,aggregate_occ,recursive\n";
    for (AtomId a = 1; a <= index.max_id; ++a) {
        const AtomOccurrences& o = index.atom[static_cast<std::size_t>(a)];
        out += std::to_string(a) + "," + std::to_string(o.head_occ) + "," +
               std::to_string(o.body_occ) + "," + std::to_string(o.pos_body_occ) + "," +
               std::to_string(o.neg_body_occ) + "," + std::to_string(o.short_body_occ) + "," +
               std::to_string(o.short_pos_body_occ) + "," + std::to_string(o.short_neg_body_occ) +
               "," + std::to_string(o.aggregate_occ) + "," +
               std::to_string(index.recursive.count(a)) + "\n";
    }
    out += "\nstatement,kind,heads,body,pos_body,neg_body\n";
    for (std::size_t k = 0; k < program.statements.size(); ++k) {
        const Statement& stmt = program.statements[k];
        std::string      kind;
        std::size_t      nh = 0, np = 0, nn = 0;
        if (const auto parts = rule_parts(stmt)) {
            kind = parts->is_choice ? "choice"
                   : parts->heads.empty() ? "constraint"
                   : parts->heads.size() == 1 ? "normal"
                                              : "disjunctive";
            nh   = parts->heads.size();
            np   = parts->pos_body->size();
            nn   = parts->neg_body->size();
        }
        else if (const auto* agg = std::get_if<AggregateDef>(&stmt)) {
            kind = agg->kind == AggregateKind::count ? "count" : "sum";
            nh   = 1;
            np   = agg->elements.size();
        }
        else {
            kind = "opaque";
        }
        out += std::to_string(k + 1) + "," + kind + "," + std::to_string(nh) + "," +
               std::to_string(np + nn) + "," + std::to_string(np) + "," + std::to_string(nn) + "\n";
    }
    return out;
}

/////////////////////////////////////////////////////////////////////////////////////////
// tune objective
/////////////////////////////////////////////////////////////////////////////////////////

struct TuneSetup {
    std::string kind; // sat | asp
    SolverManifest manifest;
    double      cutoff   = 300.0;
    std::int64_t memlimit = 0;
    bool        remap_ids = false;
    std::string scratch_dir;
    bool        strict = false;
};

// reconfiguration and solving time, accounted separately
struct TuneClock {
    std::atomic<double> reorder_seconds{0.0};
    std::atomic<double> solve_seconds{0.0};

    void add(std::atomic<double>& slot, double v) {
        double cur = slot.load();
        while (!slot.compare_exchange_weak(cur, cur + v)) {}
    }
};

Objective make_tune_objective(const TuneSetup& setup, const std::shared_ptr<TuneClock>& clock) {
    auto counter = std::make_shared<std::atomic<std::uint64_t>>(0);
    return [setup, clock, counter](const Configuration& config, const std::string& instance) -> double {
        std::vector<std::pair<std::string, double>> entries(config.values.begin(),
                                                            config.values.end());
        const std::string scratch = setup.scratch_dir + "/eval_" +
                                    std::to_string(counter->fetch_add(1)) +
                                    (setup.kind == "sat" ? ".cnf" : ".lp");
        const auto reorder_started = std::chrono::steady_clock::now();
        if (setup.kind == "sat") {
            const SatWeights w = sat_weights_from_entries(entries);
            auto [cnf, diag]   = parse_dimacs(read_file(instance), setup.strict);
            write_file(scratch, write_dimacs(reorder_cnf(cnf, w)));
        }
        else {
            const AspWeightFile w = asp_weights_from_entries(entries);
            auto [program, diag]  = parse_smodels(read_file(instance), setup.strict);
            AspProgram configured = reorder_program(program, w.weights, w.constants);
            if (setup.remap_ids) { configured = remap_ids_by_score(configured, w.weights); }
            write_file(scratch, write_smodels(configured));
        }
        const std::chrono::duration<double> reorder_elapsed =
            std::chrono::steady_clock::now() - reorder_started;
        const RunRecord record =
            run_solver(setup.manifest, scratch, setup.cutoff, setup.memlimit, "tune");
        std::remove(scratch.c_str());
        clock->add(clock->reorder_seconds, reorder_elapsed.count());
        clock->add(clock->solve_seconds, record.cpu_seconds);
        return record.outcome == Outcome::solved ? record.cpu_seconds : 10.0 * setup.cutoff;
    };
}

/////////////////////////////////////////////////////////////////////////////////////////

int dispatch(int argc, char** argv) {
    CLI::App app{"Syntactic reordering and configuration of CNF formulae and ground programs"};
    app.require_subcommand(1);

    bool strict = false;
    app.add_flag("--strict", strict, "treat input warnings as errors");

    std::string in_path, out_path, weights_path;
    bool        force = false;

    auto* reorder_sat = app.add_subcommand("reorder-sat", "reorder a DIMACS CNF file");
    reorder_sat->add_option("input", in_path, "input CNF")->required();
    reorder_sat->add_option("--weights", weights_path, "weight file")->required();
    reorder_sat->add_option("-o,--output", out_path, "output path ('-' for stdout)");
    reorder_sat->add_flag("--force", force, "overwrite the output if it exists");
    bool ordcl2_raw = false;
    reorder_sat->add_flag("--ordcl2-raw", ordcl2_raw,
                          "with ord_cl=2, add raw clause feature values instead of weighted ones");

    auto* reorder_asp = app.add_subcommand("reorder-asp", "reorder an smodels ground program");
    reorder_asp->add_option("input", in_path, "input program")->required();
    reorder_asp->add_option("--weights", weights_path, "weight file")->required();
    reorder_asp->add_option("-o,--output", out_path, "output path ('-' for stdout)");
    reorder_asp->add_flag("--force", force, "overwrite the output if it exists");
    bool remap_ids = false, pin_opaque = false;
    reorder_asp->add_flag("--remap-ids", remap_ids, "renumber atoms by descending literal score");
    reorder_asp->add_flag("--pin-opaque", pin_opaque, "keep unscored statements at their positions");

    std::string kind = "sat";
    auto* features = app.add_subcommand("features", "emit the feature tables as CSV");
    features->add_option("input", in_path, "input file")->required();
    features->add_option("--kind", kind, "sat|asp")->required()->check(CLI::IsMember({"sat", "asp"}));
    features->add_option("-o,--output", out_path, "output path ('-' for stdout)");
    features->add_flag("--force", force, "overwrite the output if it exists");

    SynthParams synth;
    std::uint64_t seed = 0;
    auto* gen = app.add_subcommand("gen-synth", "generate a pigeonhole + graph colouring program");
    gen->add_option("--pigeons", synth.pigeons, "pigeons")->required();
    gen->add_option("--holes", synth.holes, "holes")->required();
    gen->add_option("--colors", synth.colors, "colours")->required();
    gen->add_option("--nodes", synth.nodes, "complete-graph nodes")->required();
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("-o,--output", out_path, "output path ('-' for stdout)");
    gen->add_flag("--force", force, "overwrite the output if it exists");

    std::string solver_path, instances_dir;
    double      cutoff = 300.0;
    std::string memlimit_text = "0";
    int         jobs = 1;
    auto* run = app.add_subcommand("run", "run a solver over an instance directory");
    run->add_option("--solver", solver_path, "solver manifest")->required();
    run->add_option("--instances", instances_dir, "instance directory")->required();
    run->add_option("--cutoff", cutoff, "CPU-time cutoff in seconds");
    run->add_option("--memlimit", memlimit_text, "address-space limit (bytes, K/M/G suffixes)");
    run->add_option("--jobs", jobs, "concurrent solver processes");
    std::string config_id;
    run->add_option("--config", config_id, "configuration id recorded in the log");
    run->add_option("-o,--output", out_path, "run-log CSV path ('-' for stdout)");
    run->add_flag("--force", force, "overwrite the output if it exists");

    std::string train_dir, method = "smbo", checkpoint;
    int         budget = 100;
    auto* tune = app.add_subcommand("tune", "search for a weight vector that speeds up a solver");
    tune->add_option("--solver", solver_path, "solver manifest")->required();
    tune->add_option("--train", train_dir, "training instance directory")->required();
    tune->add_option("--kind", kind, "sat|asp")->required()->check(CLI::IsMember({"sat", "asp"}));
    tune->add_option("--budget", budget, "objective evaluations");
    tune->add_option("--seed", seed, "search seed");
    tune->add_option("--method", method, "smbo|random")->check(CLI::IsMember({"smbo", "random"}));
    tune->add_option("--cutoff", cutoff, "CPU-time cutoff per run in seconds");
    tune->add_option("--memlimit", memlimit_text, "address-space limit (bytes, K/M/G suffixes)");
    tune->add_option("--jobs", jobs, "concurrent solver runs inside one race step");
    tune->add_option("--checkpoint", checkpoint, "evaluation log; reused to resume a session");
    tune->add_flag("--remap-ids", remap_ids, "also renumber atoms (asp only)");
    tune->add_option("-o,--output", out_path, "best weight file ('-' for stdout)");
    tune->add_flag("--force", force, "overwrite the output if it exists");

    std::vector<std::string> run_csvs;
    std::string format = "csv";
    auto* score = app.add_subcommand("score", "PAR10/IPC/coverage report from run logs");
    score->add_option("--runs", run_csvs, "run-log CSV files")->required();
    score->add_option("--cutoff", cutoff, "CPU-time cutoff the runs used")->required();
    score->add_option("--format", format, "csv|md")->check(CLI::IsMember({"csv", "md"}));
    score->add_option("-o,--output", out_path, "output path ('-' for stdout)");
    score->add_flag("--force", force, "overwrite the output if it exists");

    for (auto* sub : app.get_subcommands(nullptr)) { sub->fallthrough(); }

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return kExitOk;
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (reorder_sat->parsed()) {
        const SatWeights w = parse_sat_weights(read_file(weights_path));
        auto [cnf, diag]   = parse_dimacs(read_file(in_path), strict);
        print_warnings(diag, in_path);
        const auto blend = ordcl2_raw ? ClauseFeatureBlend::raw : ClauseFeatureBlend::weighted;
        emit_output(out_path, write_dimacs(reorder_cnf(cnf, w, blend)), force);
    }
    else if (reorder_asp->parsed()) {
        const AspWeightFile w = parse_asp_weights(read_file(weights_path));
        auto [program, diag]  = parse_smodels(read_file(in_path), strict);
        print_warnings(diag, in_path);
        AspProgram configured = reorder_program(program, w.weights, w.constants, pin_opaque);
        if (remap_ids) { configured = remap_ids_by_score(configured, w.weights); }
        emit_output(out_path, write_smodels(configured), force);
    }
    else if (features->parsed()) {
        if (kind == "sat") {
            auto [cnf, diag] = parse_dimacs(read_file(in_path), strict);
            print_warnings(diag, in_path);
            emit_output(out_path, sat_feature_csv(cnf), force);
        }
        else {
            auto [program, diag] = parse_smodels(read_file(in_path), strict);
            print_warnings(diag, in_path);
            emit_output(out_path, asp_feature_csv(program), force);
        }
    }
    else if (gen->parsed()) {
        emit_output(out_path, write_smodels(generate_synthetic(synth, seed)), force);
    }
    else if (run->parsed()) {
        const SolverManifest manifest = parse_manifest(read_file(solver_path));
        const auto           records  = run_all(manifest, list_instances(instances_dir), cutoff,
                                                parse_byte_size(memlimit_text), jobs, config_id);
        emit_output(out_path, records_to_csv(records), force);
    }
    else if (tune->parsed()) {
        TuneSetup setup;
        setup.kind      = kind;
        setup.manifest  = parse_manifest(read_file(solver_path));
        setup.cutoff    = cutoff;
        setup.memlimit  = parse_byte_size(memlimit_text);
        setup.remap_ids = remap_ids;
        setup.strict    = strict;
        char scratch_template[] = "/tmp/ordo_tune_XXXXXX";
        if (!mkdtemp(scratch_template)) {
            throw Error("cannot create scratch directory");
        }
        setup.scratch_dir = scratch_template;

        const ParameterSpace space = kind == "sat" ? ParameterSpace::sat() : ParameterSpace::asp();
        TuneOptions          options;
        options.checkpoint_path = checkpoint;
        options.jobs            = jobs;
        const auto      clock     = std::make_shared<TuneClock>();
        const Objective objective = make_tune_objective(setup, clock);
        const auto      train     = list_instances(train_dir);
        const TuneResult result   = method == "smbo"
                                        ? smbo_search(space, objective, train, budget, seed, options)
                                        : random_search(space, objective, train, budget, seed, options);
        std::error_code ec;
        std::filesystem::remove_all(setup.scratch_dir, ec);

        std::vector<std::pair<std::string, double>> entries(result.best.values.begin(),
                                                            result.best.values.end());
        std::string best_text;
        if (kind == "sat") {
            best_text = write_sat_weights(sat_weights_from_entries(entries));
        }
        else {
            const AspWeightFile w = asp_weights_from_entries(entries);
            best_text             = write_asp_weights(w.weights, w.constants);
        }
        emit_output(out_path, best_text, force);
        std::cerr << "best mean cost " << result.best_mean_cost << " over "
                  << result.history.size() << " evaluations (reorder "
                  << clock->reorder_seconds.load() << " s, solve "
                  << clock->solve_seconds.load() << " s cpu)\n";
    }
    else if (score->parsed()) {
        std::vector<RunRecord> records;
        for (const auto& path : run_csvs) {
            const auto part = records_from_csv(read_file(path));
            records.insert(records.end(), part.begin(), part.end());
        }
        const Report report = emit_report(records, cutoff);
        emit_output(out_path, format == "csv" ? report.csv : report.markdown, force);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
