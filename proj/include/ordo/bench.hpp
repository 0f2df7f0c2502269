#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ordo {

enum class Outcome { solved, timeout, memout, crash, unknown };

std::string outcome_name(Outcome o);
Outcome     outcome_from_name(const std::string& name);

struct RunRecord {
    std::string instance;
    std::string config;
    double      cpu_seconds = 0.0;
    Outcome     outcome     = Outcome::unknown;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

enum class InputMode { file, standard_input };

// How to launch one solver and classify its result. Output patterns are
// checked first (substring match, first hit wins), then the exit-code map;
// anything else is unknown. Exit codes 126/127 default to crash.
struct SolverManifest {
    std::string                                  name;
    std::string                                  command; // contains {instance} exactly once
    InputMode                                    input = InputMode::file;
    std::vector<std::pair<Outcome, std::string>> patterns;
    std::map<int, Outcome>                       exit_codes;
};

// Key-value lines:
//   name <solver name>
//   command <template with {instance}>
//   input file|stdin
//   pattern <outcome> <substring>      (repeatable)
//   exit <code> <outcome>              (repeatable)
SolverManifest parse_manifest(const std::string& text);

// Executes the solver on one instance under an OS-enforced CPU-time limit
// and address-space ceiling, measuring the CPU time of the child process
// tree. A wall-clock watchdog kills runs that idle past the cutoff; timeout
// records report at least the cutoff as their CPU time.
RunRecord run_solver(const SolverManifest& manifest, const std::string& instance_path,
                     double cutoff_seconds, std::int64_t mem_limit_bytes,
                     const std::string& config_id = "");

// Same over many instances with up to `jobs` concurrent solver processes;
// records come back in instance order regardless of scheduling.
std::vector<RunRecord> run_all(const SolverManifest& manifest,
                               const std::vector<std::string>& instance_paths, double cutoff_seconds,
                               std::int64_t mem_limit_bytes, int jobs,
                               const std::string& config_id = "");

/////////////////////////////////////////////////////////////////////////////////////////
// Metrics
/////////////////////////////////////////////////////////////////////////////////////////

// Mean runtime with every unsolved record counted as 10x the cutoff.
double par10(const std::vector<RunRecord>& records, double cutoff_seconds);

// Per-instance score 1 / (1 + log10(T / T*)) against the fastest system that
// solved the instance, 0 if unsolved; totals per system (the record's config
// field). Times are clamped below at 0.01 s before the ratio.
std::map<std::string, double> ipc_scores(const std::vector<RunRecord>& records);

struct BenchmarkSplit {
    std::vector<std::string> train;
    std::vector<std::string> test;
    std::uint64_t            seed = 0;
};

// Seeded shuffle, then the first round(test_fraction * n) instances (clamped
// to leave both sides non-empty) become the test set.
BenchmarkSplit split_instances(std::vector<std::string> instances, double test_fraction,
                               std::uint64_t seed);

/////////////////////////////////////////////////////////////////////////////////////////
// Run logs and reports
/////////////////////////////////////////////////////////////////////////////////////////

// CSV with header instance,config,cpu_seconds,outcome; lossless round-trip.
std::string            records_to_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> records_from_csv(const std::string& text);

struct Report {
    std::string csv;
    std::string markdown;
};

// Per config: instance count, solved count, PAR10 and IPC total, in stable
// column and row order.
Report emit_report(const std::vector<RunRecord>& records, double cutoff_seconds);

} // namespace ordo
