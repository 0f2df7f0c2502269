#include <ordo/bench.hpp>

#include <ordo/errors.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace ordo {

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::solved : return "solved";
        case Outcome::timeout: return "timeout";
        case Outcome::memout : return "memout";
        case Outcome::crash  : return "crash";
        default              : return "unknown";
    }
}

Outcome outcome_from_name(const std::string& name) {
    if (name == "solved") { return Outcome::solved; }
    if (name == "timeout") { return Outcome::timeout; }
    if (name == "memout") { return Outcome::memout; }
    if (name == "crash") { return Outcome::crash; }
    if (name == "unknown") { return Outcome::unknown; }
    throw Error("unknown outcome '" + name + "'");
}

SolverManifest parse_manifest(const std::string& text) {
    SolverManifest     m;
    std::istringstream in(text);
    std::string        raw;
    int                line = 0;
    bool               have_command = false;
    while (std::getline(in, raw)) {
        ++line;
        if (const std::size_t hash = raw.find('#'); hash != std::string::npos) { raw.erase(hash); }
        std::istringstream ls(raw);
        std::string        key;
        if (!(ls >> key)) { continue; }
        if (key == "name") {
            ls >> std::ws;
            std::getline(ls, m.name);
        }
        else if (key == "command") {
            ls >> std::ws;
            std::getline(ls, m.command);
            have_command = true;
        }
        else if (key == "input") {
            std::string mode;
            ls >> mode;
            if (mode == "file") { m.input = InputMode::file; }
            else if (mode == "stdin") { m.input = InputMode::standard_input; }
            else {
                throw ParseError(line, "input mode must be 'file' or 'stdin'");
            }
        }
        else if (key == "pattern") {
            std::string outcome;
            ls >> outcome >> std::ws;
            std::string substring;
            std::getline(ls, substring);
            if (substring.empty()) {
                throw ParseError(line, "pattern needs '<outcome> <substring>'");
            }
            m.patterns.emplace_back(outcome_from_name(outcome), substring);
        }
        else if (key == "exit") {
            int         code = 0;
            std::string outcome;
            if (!(ls >> code >> outcome)) {
                throw ParseError(line, "exit needs '<code> <outcome>'");
            }
            m.exit_codes[code] = outcome_from_name(outcome);
        }
        else {
            throw ParseError(line, "unknown manifest key '" + key + "'");
        }
    }
    if (!have_command) {
        throw Error("manifest has no command");
    }
    const std::size_t first = m.command.find("{instance}");
    const bool        once  = first != std::string::npos &&
                      m.command.find("{instance}", first + 1) == std::string::npos;
    if (m.input == InputMode::file && !once) {
        throw Error("command template must contain {instance} exactly once");
    }
    if (m.input == InputMode::standard_input && !once && first != std::string::npos) {
        throw Error("command template repeats {instance}");
    }
    if (m.name.empty()) { m.name = "solver"; }
    return m;
}

/////////////////////////////////////////////////////////////////////////////////////////
// Metrics
/////////////////////////////////////////////////////////////////////////////////////////

double par10(const std::vector<RunRecord>& records, double cutoff_seconds) {
    if (records.empty()) {
        throw PreconditionError("par10 of an empty record set");
    }
    double total = 0;
    for (const auto& r : records) {
        total += r.outcome == Outcome::solved ? r.cpu_seconds : 10.0 * cutoff_seconds;
    }
    return total / static_cast<double>(records.size());
}

namespace {

constexpr double kMinCpu = 0.01; // clamp before log ratios

} // namespace

std::map<std::string, double> ipc_scores(const std::vector<RunRecord>& records) {
    std::map<std::string, std::map<std::string, const RunRecord*>> by_instance; // instance -> config -> rec
    std::map<std::string, double>                                  totals;
    for (const auto& r : records) {
        if (!by_instance[r.instance].emplace(r.config, &r).second) {
            throw PreconditionError("duplicate record for instance '" + r.instance + "' and config '" +
                                    r.config + "'");
        }
        totals.emplace(r.config, 0.0);
    }
    for (const auto& [instance, runs] : by_instance) {
        if (runs.size() != totals.size()) {
            throw PreconditionError("instance '" + instance + "' lacks a record for some system");
        }
        double best = 0;
        bool   any  = false;
        for (const auto& [config, rec] : runs) {
            if (rec->outcome != Outcome::solved) { continue; }
            const double t = std::max(rec->cpu_seconds, kMinCpu);
            best           = any ? std::min(best, t) : t;
            any            = true;
        }
        if (!any) { continue; }
        for (const auto& [config, rec] : runs) {
            if (rec->outcome != Outcome::solved) { continue; }
            const double t = std::max(rec->cpu_seconds, kMinCpu);
            totals[config] += 1.0 / (1.0 + std::log10(t / best));
        }
    }
    return totals;
}

BenchmarkSplit split_instances(std::vector<std::string> instances, double test_fraction,
                               std::uint64_t seed) {
    if (instances.size() < 2) {
        throw PreconditionError("need at least 2 instances to split");
    }
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw PreconditionError("test fraction must be in (0, 1)");
    }
    std::mt19937_64 rng(seed);
    std::shuffle(instances.begin(), instances.end(), rng);
    const auto n = static_cast<std::int64_t>(instances.size());
    auto       k = static_cast<std::int64_t>(std::llround(test_fraction * static_cast<double>(n)));
    k            = std::clamp<std::int64_t>(k, 1, n - 1);
    BenchmarkSplit split;
    split.seed = seed;
    split.test.assign(instances.begin(), instances.begin() + k);
    split.train.assign(instances.begin() + k, instances.end());
    return split;
}

/////////////////////////////////////////////////////////////////////////////////////////
// Run logs and reports
/////////////////////////////////////////////////////////////////////////////////////////

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) { return s; }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') { out += '"'; }
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line, int line_no) {
    std::vector<std::string> out;
    std::string              cur;
    bool                     quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char c = line[k];
        if (quoted) {
            if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
                cur += '"';
                ++k;
            }
            else if (c == '"') {
                quoted = false;
            }
            else {
                cur += c;
            }
        }
        else if (c == '"') {
            quoted = true;
        }
        else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        }
        else {
            cur += c;
        }
    }
    if (quoted) {
        throw ParseError(line_no, "unterminated quoted CSV field");
    }
    out.push_back(std::move(cur));
    return out;
}

std::string format_cpu(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string format_short(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

} // namespace

std::string records_to_csv(const std::vector<RunRecord>& records) {
    std::string out = "instance,config,cpu_seconds,outcome\n";
    for (const auto& r : records) {
        out += csv_field(r.instance) + "," + csv_field(r.config) + "," + format_cpu(r.cpu_seconds) +
               "," + outcome_name(r.outcome) + "\n";
    }
    return out;
}

std::vector<RunRecord> records_from_csv(const std::string& text) {
    std::vector<RunRecord> out;
    std::istringstream     in(text);
    std::string            raw;
    int                    line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (!raw.empty() && raw.back() == '\r') { raw.pop_back(); }
        if (raw.empty()) { continue; }
        const auto fields = split_csv_line(raw, line);
        if (line == 1 && !fields.empty() && fields[0] == "instance") { continue; }
        if (fields.size() != 4) {
            throw ParseError(line, "expected 4 CSV fields");
        }
        RunRecord r;
        r.instance          = fields[0];
        r.config            = fields[1];
        const std::string& t = fields[2];
        const auto [p, ec]  = std::from_chars(t.data(), t.data() + t.size(), r.cpu_seconds);
        if (ec != std::errc() || p != t.data() + t.size()) {
            throw ParseError(line, "bad cpu_seconds value '" + t + "'");
        }
        r.outcome = outcome_from_name(fields[3]);
        out.push_back(std::move(r));
    }
    return out;
}

Report emit_report(const std::vector<RunRecord>& records, double cutoff_seconds) {
    std::map<std::string, std::vector<RunRecord>> by_config;
    for (const auto& r : records) { by_config[r.config].push_back(r); }
    std::map<std::string, double> ipc;
    if (!records.empty()) { ipc = ipc_scores(records); }

    Report report;
    report.csv      = "config,instances,solved,par10,ipc\n";
    report.markdown = "| config | instances | solved | PAR10 | IPC |\n"
                      "|---|---:|---:|---:|---:|\n";
    for (const auto& [config, recs] : by_config) {
        const auto solved = std::count_if(recs.begin(), recs.end(), [](const RunRecord& r) {
            return r.outcome == Outcome::solved;
        });
        const double p10  = par10(recs, cutoff_seconds);
        const double ipcv = ipc.at(config);
        report.csv += config + "," + std::to_string(recs.size()) + "," + std::to_string(solved) + "," +
                      format_short(p10) + "," + format_short(ipcv) + "\n";
        report.markdown += "| " + config + " | " + std::to_string(recs.size()) + " | " +
                           std::to_string(solved) + " | " + format_short(p10) + " | " +
                           format_short(ipcv) + " |\n";
    }
    return report;
}

/////////////////////////////////////////////////////////////////////////////////////////
// Parallel driver
/////////////////////////////////////////////////////////////////////////////////////////

std::vector<RunRecord> run_all(const SolverManifest& manifest,
                               const std::vector<std::string>& instance_paths, double cutoff_seconds,
                               std::int64_t mem_limit_bytes, int jobs,
                               const std::string& config_id) {
    std::vector<RunRecord> records(instance_paths.size());
    std::mutex             mtx;
    std::size_t            next = 0;
    jobs                        = std::max(1, jobs);

    auto worker = [&]() {
        for (;;) {
            std::size_t mine;
            {
                std::lock_guard<std::mutex> lock(mtx);
                if (next >= instance_paths.size()) { return; }
                mine = next++;
            }
            records[mine] =
                run_solver(manifest, instance_paths[mine], cutoff_seconds, mem_limit_bytes, config_id);
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) { pool.emplace_back(worker); }
    for (auto& t : pool) { t.join(); }
    return records;
}

} // namespace ordo
