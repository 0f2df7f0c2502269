#include <ordo/asp_config.hpp>
#include <ordo/bench.hpp>
#include <ordo/dimacs.hpp>
#include <ordo/sat_config.hpp>
#include <ordo/semantics.hpp>
#include <ordo/smodels.hpp>
#include <ordo/synth.hpp>
#include <ordo/tuner.hpp>
#include <ordo/weights.hpp>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ordo;

namespace {

std::vector<std::pair<std::string, double>> dict_entries(const py::dict& d) {
    std::vector<std::pair<std::string, double>> entries;
    for (const auto& item : d) {
        entries.emplace_back(item.first.cast<std::string>(), item.second.cast<double>());
    }
    return entries;
}

SatWeights sat_weights_from_dict(const py::dict& d) { return sat_weights_from_entries(dict_entries(d)); }

AspWeightFile asp_weights_from_dict(const py::dict& d) { return asp_weights_from_entries(dict_entries(d)); }

std::vector<std::set<AtomId>> as_sets(const std::set<Interpretation>& models) {
    std::vector<std::set<AtomId>> out;
    out.reserve(models.size());
    for (const auto& m : models) { out.push_back(m.true_atoms); }
    return out;
}

} // namespace

PYBIND11_MODULE(ordo, m) {
    m.doc() = "Weighted syntactic reordering of CNF formulae and ground programs";

    py::class_<CnfFormula>(m, "CnfFormula")
        .def(py::init<>())
        .def_readwrite("declared_atom_count", &CnfFormula::declared_atom_count)
        .def_readwrite("declared_clause_count", &CnfFormula::declared_clause_count)
        .def_property_readonly("clauses",
                               [](const CnfFormula& cnf) {
                                   std::vector<std::vector<std::int64_t>> out;
                                   for (const auto& c : cnf.clauses) {
                                       std::vector<std::int64_t> lits;
                                       for (const auto& l : c.literals) {
                                           lits.push_back(literal_to_dimacs(l));
                                       }
                                       out.push_back(std::move(lits));
                                   }
                                   return out;
                               })
        .def("__len__", [](const CnfFormula& cnf) { return cnf.clauses.size(); });

    py::class_<AspProgram>(m, "AspProgram")
        .def(py::init<>())
        .def_property_readonly("symbol_table", [](const AspProgram& p) { return p.symbol_table; })
        .def_property_readonly("statement_tokens",
                               [](const AspProgram& p) {
                                   std::vector<std::vector<std::int64_t>> out;
                                   for (const auto& s : p.statements) {
                                       out.push_back(statement_tokens(s));
                                   }
                                   return out;
                               })
        .def("__len__", [](const AspProgram& p) { return p.statements.size(); });

    // formats
    m.def("parse_dimacs", [](const std::string& text, bool strict) {
        auto [cnf, diag] = parse_dimacs(text, strict);
        std::vector<std::pair<int, std::string>> warnings;
        for (const auto& w : diag.warnings) { warnings.emplace_back(w.line, w.message); }
        return py::make_tuple(cnf, warnings);
    }, py::arg("text"), py::arg("strict") = false);
    m.def("write_dimacs", &write_dimacs);
    m.def("parse_smodels", [](const std::string& text, bool strict) {
        auto [program, diag] = parse_smodels(text, strict);
        std::vector<std::pair<int, std::string>> warnings;
        for (const auto& w : diag.warnings) { warnings.emplace_back(w.line, w.message); }
        return py::make_tuple(program, warnings);
    }, py::arg("text"), py::arg("strict") = false);
    m.def("write_smodels", &write_smodels);

    // configuration
    m.def("reorder_cnf", [](const CnfFormula& cnf, const py::dict& weights) {
        return reorder_cnf(cnf, sat_weights_from_dict(weights));
    });
    m.def("sat_clause_scores", [](const CnfFormula& cnf, const py::dict& weights) {
        const SatWeights    w     = sat_weights_from_dict(weights);
        const CnfStats      stats = compute_stats(cnf);
        std::vector<double> out;
        for (const auto& c : cnf.clauses) { out.push_back(clause_score(c, stats, w)); }
        return out;
    });
    m.def("sat_atom_scores", [](const CnfFormula& cnf, const py::dict& weights) {
        const SatWeights w     = sat_weights_from_dict(weights);
        const CnfStats   stats = compute_stats(cnf);
        std::map<std::int64_t, double> out;
        for (AtomId a = 1; a < static_cast<AtomId>(stats.atom.size()); ++a) {
            out[a] = atom_score(a, stats, w);
        }
        return out;
    });
    m.def("reorder_program", [](const AspProgram& program, const py::dict& weights) {
        const AspWeightFile w = asp_weights_from_dict(weights);
        return reorder_program(program, w.weights, w.constants);
    });
    m.def("remap_ids_by_score", [](const AspProgram& program, const py::dict& weights) {
        return remap_ids_by_score(program, asp_weights_from_dict(weights).weights);
    });
    m.def("asp_statement_scores", [](const AspProgram& program, const py::dict& weights) {
        const AspWeightFile w     = asp_weights_from_dict(weights);
        const ProgramIndex  index = index_program(program);
        std::vector<double> out;
        for (const auto& s : program.statements) {
            out.push_back(statement_score(s, index, w.weights, w.constants));
        }
        return out;
    });
    m.def("asp_literal_scores", [](const AspProgram& program, const py::dict& weights) {
        const AspWeightFile w     = asp_weights_from_dict(weights);
        const ProgramIndex  index = index_program(program);
        std::map<std::int64_t, double> out;
        for (AtomId a = 1; a <= index.max_id; ++a) { out[a] = literal_score(a, index, w.weights); }
        return out;
    });

    // oracles
    m.def("enumerate_models", [](const CnfFormula& cnf, int cap) {
        return as_sets(enumerate_models(cnf, cap));
    }, py::arg("cnf"), py::arg("atom_cap") = 20);
    m.def("enumerate_stable_models", [](const AspProgram& program, int cap) {
        return as_sets(enumerate_stable_models(program, cap));
    }, py::arg("program"), py::arg("atom_cap") = 16);
    m.def("recursive_atoms", [](const AspProgram& program) { return recursive_atoms(program); });

    // generator and metrics
    m.def("generate_synthetic", [](int pigeons, int holes, int colors, int nodes, std::uint64_t seed) {
        return generate_synthetic({pigeons, holes, colors, nodes}, seed);
    }, py::arg("pigeons"), py::arg("holes"), py::arg("colors"), py::arg("nodes"), py::arg("seed") = 0);
    m.def("par10", [](const std::vector<std::pair<double, std::string>>& runs, double cutoff) {
        std::vector<RunRecord> records;
        for (const auto& [cpu, outcome] : runs) {
            records.push_back({"i" + std::to_string(records.size()), "s", cpu,
                               outcome_from_name(outcome)});
        }
        return par10(records, cutoff);
    }, py::arg("runs"), py::arg("cutoff"), "runs: list of (cpu_seconds, outcome-name) pairs");
    m.def("ipc_scores", [](const std::map<std::string, std::vector<std::pair<double, std::string>>>& runs) {
        std::vector<RunRecord> records;
        for (const auto& [config, rs] : runs) {
            std::size_t k = 0;
            for (const auto& [cpu, outcome] : rs) {
                records.push_back({"i" + std::to_string(k++), config, cpu, outcome_from_name(outcome)});
            }
        }
        return ipc_scores(records);
    }, "runs: config -> list of (cpu_seconds, outcome-name), instance-aligned by position");
}
