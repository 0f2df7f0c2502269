#include <ordo/synth.hpp>

#include <ordo/errors.hpp>

#include <limits>
#include <string>

namespace ordo {

AspProgram generate_synthetic(const SynthParams& params, std::uint64_t) {
    if (params.pigeons < 1 || params.holes < 1 || params.colors < 1 || params.nodes < 1) {
        throw PreconditionError("all synthetic-instance parameters must be >= 1");
    }
    const auto p = static_cast<std::int64_t>(params.pigeons);
    const auto h = static_cast<std::int64_t>(params.holes);
    const auto k = static_cast<std::int64_t>(params.colors);
    const auto n = static_cast<std::int64_t>(params.nodes);

    const std::int64_t id_budget = p * h + n * k + n * (n - 1) + 2 * p;
    if (p > std::numeric_limits<std::int64_t>::max() / (h + 2) || id_budget <= 0 ||
        id_budget > std::int64_t{1} << 40) {
        throw FormatError("synthetic-instance parameters exhaust the atom id space");
    }

    AspProgram program;
    AtomId     next = 1;
    auto       alloc = [&](std::string name) {
        program.symbol_table.emplace(next, std::move(name));
        return next++;
    };

    std::vector<std::vector<AtomId>> in(static_cast<std::size_t>(p));
    for (std::int64_t i = 1; i <= p; ++i) {
        for (std::int64_t j = 1; j <= h; ++j) {
            in[i - 1].push_back(alloc("in(" + std::to_string(i) + "," + std::to_string(j) + ")"));
        }
    }
    std::vector<std::vector<AtomId>> col(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i) {
        for (std::int64_t c = 1; c <= k; ++c) {
            col[i - 1].push_back(alloc("col(" + std::to_string(i) + ",c" + std::to_string(c) + ")"));
        }
    }
    std::vector<std::vector<AtomId>> edge(static_cast<std::size_t>(n),
                                          std::vector<AtomId>(static_cast<std::size_t>(n), 0));
    for (std::int64_t i = 1; i <= n; ++i) {
        for (std::int64_t j = 1; j <= n; ++j) {
            if (i == j) { continue; }
            edge[i - 1][j - 1] = alloc("edge(" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }

    // one hole per pigeon is selectable
    for (std::int64_t i = 1; i <= p; ++i) {
        program.statements.push_back(ChoiceRule{in[i - 1], {}, {}});
    }
    // exactly one hole per pigeon
    for (std::int64_t i = 1; i <= p; ++i) {
        AggregateDef ge2;
        ge2.head_id = alloc("atleast2(" + std::to_string(i) + ")");
        ge2.kind    = AggregateKind::count;
        ge2.bound   = 2;
        for (AtomId a : in[i - 1]) { ge2.elements.push_back({1, pos(a)}); }
        AggregateDef ge1;
        ge1.head_id  = alloc("atleast1(" + std::to_string(i) + ")");
        ge1.kind     = AggregateKind::count;
        ge1.bound    = 1;
        ge1.elements = ge2.elements;

        const AtomId ge2_id = ge2.head_id;
        const AtomId ge1_id = ge1.head_id;
        program.statements.emplace_back(std::move(ge2));
        program.statements.push_back(NormalRule{std::nullopt, {ge2_id}, {}});
        program.statements.emplace_back(std::move(ge1));
        program.statements.push_back(NormalRule{std::nullopt, {}, {ge1_id}});
    }
    // no hole is shared
    for (std::int64_t j = 1; j <= h; ++j) {
        for (std::int64_t i1 = 1; i1 <= p; ++i1) {
            for (std::int64_t i2 = i1 + 1; i2 <= p; ++i2) {
                program.statements.push_back(
                    NormalRule{std::nullopt, {in[i1 - 1][j - 1], in[i2 - 1][j - 1]}, {}});
            }
        }
    }
    // every node takes a colour
    for (std::int64_t i = 1; i <= n; ++i) {
        if (k == 1) {
            program.statements.push_back(NormalRule{col[i - 1][0], {}, {}});
        }
        else {
            program.statements.push_back(DisjunctiveRule{col[i - 1], {}, {}});
        }
    }
    // adjacent nodes never share a colour
    for (std::int64_t i1 = 1; i1 <= n; ++i1) {
        for (std::int64_t i2 = 1; i2 <= n; ++i2) {
            if (i1 == i2) { continue; }
            for (std::int64_t c = 1; c <= k; ++c) {
                program.statements.push_back(NormalRule{
                    std::nullopt, {edge[i1 - 1][i2 - 1], col[i1 - 1][c - 1], col[i2 - 1][c - 1]}, {}});
            }
        }
    }
    // the complete graph
    for (std::int64_t i = 1; i <= n; ++i) {
        for (std::int64_t j = 1; j <= n; ++j) {
            if (i != j) { program.statements.push_back(NormalRule{edge[i - 1][j - 1], {}, {}}); }
        }
    }

    program.compute_sections = "B+\n0\nB-\n0\n1\n";
    return program;
}

} // namespace ordo
