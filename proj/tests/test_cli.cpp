#include "testsupport.hpp"

#include <ordo/bench.hpp>
#include <ordo/dimacs.hpp>
#include <ordo/textio.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <sys/wait.h>

using namespace ordo;
using namespace ordo::test;

namespace {

std::string cli_path() {
    const char* env = std::getenv("ORDO_CLI");
    return env == nullptr ? "" : env;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        char templ[] = "/tmp/ordo_cli_XXXXXX";
        path         = mkdtemp(templ);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    [[nodiscard]] std::string file(const std::string& name, const std::string& content) const {
        const std::string p = (path / name).string();
        write_file(p, content);
        return p;
    }
    [[nodiscard]] std::string at(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
    const int status = std::system((cli_path() + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("reorder-sat reproduces the configured example", "[cli]") {
    REQUIRE_FALSE(cli_path().empty());
    TempDir           dir;
    const std::string in      = dir.file("run.cnf", kRunCnf);
    const std::string weights = dir.file("ex.w", kExampleSatWeights);
    const std::string out     = dir.at("out.cnf");
    REQUIRE(run_cli("reorder-sat " + in + " --weights " + weights + " -o " + out) == 0);
    REQUIRE(read_file(out) == kConfCnf);
}

TEST_CASE("reorder-sat with zero weights canonicalizes", "[cli]") {
    TempDir           dir;
    const std::string in      = dir.file("x.cnf", "c noise\np cnf 3 2\n1   2 0\n-3\t1 0\n");
    const std::string weights = dir.file("zero.w", "");
    const std::string out     = dir.at("y.cnf");
    REQUIRE(run_cli("reorder-sat " + in + " --weights " + weights + " -o " + out) == 0);
    REQUIRE(read_file(out) == "p cnf 3 2\n1 2 0\n-3 1 0\n");
}

TEST_CASE("reorder-asp reproduces the configured order", "[cli]") {
    TempDir           dir;
    const std::string in      = dir.file("run.lp", run_program_text());
    const std::string weights = dir.file("ex.w", kExampleAspWeights);
    const std::string out     = dir.at("out.lp");
    REQUIRE(run_cli("reorder-asp " + in + " --weights " + weights + " -o " + out) == 0);
    const std::string text = read_file(out);
    std::istringstream in_text(text);
    std::string        line;
    std::vector<std::string> rules;
    while (std::getline(in_text, line) && line != "0") { rules.push_back(line); }
    REQUIRE(rules == kConfProgramRuleLines);
}

TEST_CASE("features totals are invariant under reordering", "[cli]") {
    TempDir           dir;
    std::mt19937_64   rng(8);
    const CnfFormula  cnf     = random_cnf(rng);
    const std::string in      = dir.file("a.cnf", write_dimacs(cnf));
    const std::string weights = dir.file("w.w", "size -10\nbin 4\nord_cl 1\nord_lit 1\n");
    const std::string reordered = dir.at("b.cnf");
    REQUIRE(run_cli("reorder-sat " + in + " --weights " + weights + " -o " + reordered) == 0);
    const std::string f1 = dir.at("f1.csv");
    const std::string f2 = dir.at("f2.csv");
    REQUIRE(run_cli("features " + in + " --kind sat -o " + f1) == 0);
    REQUIRE(run_cli("features " + reordered + " --kind sat -o " + f2) == 0);

    // the atom table is identical; the clause table is a permutation
    auto split_tables = [](const std::string& text) {
        const std::size_t at = text.find("\n\n");
        REQUIRE(at != std::string::npos);
        std::multiset<std::string> clause_rows;
        std::istringstream         rows(text.substr(at + 2));
        std::string                row;
        std::getline(rows, row); // header
        while (std::getline(rows, row)) {
            clause_rows.insert(row.substr(row.find(','))); // drop the index column
        }
        return std::make_pair(text.substr(0, at), clause_rows);
    };
    const auto [atoms1, clauses1] = split_tables(read_file(f1));
    const auto [atoms2, clauses2] = split_tables(read_file(f2));
    REQUIRE(atoms1 == atoms2);
    REQUIRE(clauses1 == clauses2);
}

TEST_CASE("gen-synth emits a parseable program", "[cli]") {
    TempDir           dir;
    const std::string out = dir.at("synth.lp");
    REQUIRE(run_cli("gen-synth --pigeons 2 --holes 2 --colors 2 --nodes 2 -o " + out) == 0);
    const auto [program, diag] = parse_smodels(read_file(out));
    REQUIRE(diag.warnings.empty());
    REQUIRE(enumerate_stable_models(program).size() == 4);
}

TEST_CASE("score on a hand-built log", "[cli]") {
    TempDir           dir;
    const std::string csv = dir.file("runs.csv",
                                     "instance,config,cpu_seconds,outcome\n"
                                     "a,s,10.000000,solved\n"
                                     "b,s,20.000000,solved\n"
                                     "c,s,300.000000,timeout\n");
    const std::string out = dir.at("report.csv");
    REQUIRE(run_cli("score --runs " + csv + " --cutoff 300 -o " + out) == 0);
    REQUIRE(read_file(out).find("s,3,2,1010,") != std::string::npos);
}

TEST_CASE("run logs solver executions", "[cli]") {
    TempDir           dir;
    const std::string inst_dir = (dir.path / "instances").string();
    std::filesystem::create_directory(inst_dir);
    write_file(inst_dir + "/a.cnf", "SATISFIABLE\n");
    write_file(inst_dir + "/b.cnf", "SATISFIABLE\n");
    const std::string manifest = dir.file("echo.solver",
                                          "name echo\ncommand /bin/cat {instance}\n"
                                          "input file\npattern solved SATISFIABLE\n");
    const std::string out = dir.at("runs.csv");
    REQUIRE(run_cli("run --solver " + manifest + " --instances " + inst_dir +
                    " --cutoff 2 --memlimit 1G --jobs 2 -o " + out) == 0);
    const auto records = records_from_csv(read_file(out));
    REQUIRE(records.size() == 2);
    for (const auto& r : records) { REQUIRE(r.outcome == Outcome::solved); }
}

TEST_CASE("exit codes", "[cli]") {
    TempDir dir;
    SECTION("unknown flag is a usage error") {
        REQUIRE(run_cli("reorder-sat x.cnf --weights w --bogus") == 1);
        REQUIRE(run_cli("no-such-command") == 1);
    }
    SECTION("unreadable input is a data error") {
        const std::string weights = dir.file("w.w", "");
        REQUIRE(run_cli("reorder-sat /no/such/file.cnf --weights " + weights) == 2);
    }
    SECTION("malformed weight file is a data error") {
        const std::string in = dir.file("a.cnf", kRunCnf);
        const std::string w1 = dir.file("bad1.w", "frobnicate 3\n");
        const std::string w2 = dir.file("bad2.w", "occ 99\n");
        const std::string w3 = dir.file("bad3.w", "occ\n");
        REQUIRE(run_cli("reorder-sat " + in + " --weights " + w1) == 2);
        REQUIRE(run_cli("reorder-sat " + in + " --weights " + w2) == 2);
        REQUIRE(run_cli("reorder-sat " + in + " --weights " + w3) == 2);
    }
    SECTION("existing output needs --force") {
        const std::string in      = dir.file("a.cnf", kRunCnf);
        const std::string weights = dir.file("w.w", "");
        const std::string out     = dir.file("out.cnf", "old content");
        REQUIRE(run_cli("reorder-sat " + in + " --weights " + weights + " -o " + out) == 2);
        REQUIRE(read_file(out) == "old content");
        REQUIRE(run_cli("reorder-sat " + in + " --weights " + weights + " -o " + out + " --force") == 0);
        REQUIRE(read_file(out) != "old content");
    }
    SECTION("strict mode turns warnings into data errors") {
        const std::string in      = dir.file("mismatch.cnf", "p cnf 2 5\n1 0\n");
        const std::string weights = dir.file("w.w", "");
        REQUIRE(run_cli("reorder-sat " + in + " --weights " + weights) == 0);
        REQUIRE(run_cli("--strict reorder-sat " + in + " --weights " + weights) == 2);
    }
}

TEST_CASE("malformed asp weight names are rejected", "[cli]") {
    TempDir           dir;
    const std::string in = dir.file("run.lp", run_program_text());
    const std::string w  = dir.file("bad.w", "occ 3\n"); // a sat-only key
    REQUIRE(run_cli("reorder-asp " + in + " --weights " + w) == 2);
}
