#include "testsupport.hpp"

#include <ordo/asp_config.hpp>
#include <ordo/errors.hpp>
#include <ordo/semantics.hpp>
#include <ordo/smodels.hpp>
#include <ordo/weights.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace ordo;
using namespace ordo::test;

namespace {

std::vector<std::string> rule_lines_of(const std::string& text) {
    std::istringstream       in(text);
    std::string              line;
    std::vector<std::string> out;
    while (std::getline(in, line) && line != "0") { out.push_back(line); }
    return out;
}

std::set<Interpretation> mapped_models(const std::set<Interpretation>& models,
                                       const std::vector<AtomId>& new_from_old) {
    std::set<Interpretation> out;
    for (const auto& m : models) {
        Interpretation image;
        for (AtomId a : m.true_atoms) {
            image.true_atoms.insert(new_from_old[static_cast<std::size_t>(a)]);
        }
        out.insert(std::move(image));
    }
    return out;
}

} // namespace

TEST_CASE("literal_score on the running program", "[asp-config]") {
    const AspProgram   program = parse_smodels(run_program_text()).first;
    const ProgramIndex index   = index_program(program);
    AspWeights         w;
    w.neg_body_occ = 10;
    REQUIRE(literal_score(2, index, w) == 10.0);
    for (AtomId a : {1, 3, 4, 5, 6, 7}) { REQUIRE(literal_score(a, index, w) == 0.0); }

    const AspWeights zeros;
    for (AtomId a = 1; a <= 7; ++a) { REQUIRE(literal_score(a, index, zeros) == 0.0); }
}

TEST_CASE("occurrence counting details", "[asp-config]") {
    // a <- b, not c.   a <- b, c, not d.   {a} <- b.   agg over a and not b
    AspProgram program;
    program.statements.push_back(NormalRule{1, {2}, {3}});
    program.statements.push_back(NormalRule{1, {2, 3}, {4}});
    program.statements.push_back(ChoiceRule{{1}, {2}, {}});
    program.statements.push_back(AggregateDef{9, AggregateKind::sum, 1, {{1, neg(2)}, {2, pos(1)}}});
    const ProgramIndex index = index_program(program);

    REQUIRE(index.atom[1].head_occ == 3); // choice heads count
    REQUIRE(index.atom[2].pos_body_occ == 3);
    REQUIRE(index.atom[2].body_occ == 3);
    REQUIRE(index.atom[2].short_pos_body_occ == 2); // the 3-literal body is not short
    REQUIRE(index.atom[3].neg_body_occ == 1);
    REQUIRE(index.atom[3].pos_body_occ == 1);
    REQUIRE(index.atom[3].body_occ == 2);
    REQUIRE(index.atom[4].neg_body_occ == 1);
    REQUIRE(index.atom[1].aggregate_occ == 1);
    REQUIRE(index.atom[2].aggregate_occ == 1); // either polarity counts
    REQUIRE(index.atom[9].aggregate_occ == 0);
}

TEST_CASE("rule_score reference values", "[asp-config]") {
    const AspProgram   program = parse_smodels(run_program_text()).first;
    const ProgramIndex index   = index_program(program);
    AspWeights         w;
    w.neg_body_occ = 10;
    const ScoringConstants consts;

    REQUIRE(rule_score(program.statements[0], index, w, consts) == 5.0);
    REQUIRE(rule_score(program.statements[1], index, w, consts) == 2.5);
    REQUIRE(rule_score(program.statements[3], index, w, consts) == 0.0);

    AspWeights normal_only;
    normal_only.normal = 3;
    AspProgram fact;
    fact.statements.push_back(NormalRule{1, {}, {}});
    REQUIRE(rule_score(fact.statements[0], index_program(fact), normal_only, consts) == 3.0);

    REQUIRE_THROWS_AS(rule_score(program.statements[2], index, w, consts), PreconditionError);
}

TEST_CASE("rule_score structural terms", "[asp-config]") {
    AspProgram program;
    program.statements.push_back(NormalRule{std::nullopt, {1}, {2}}); // constraint, horn, short
    program.statements.push_back(ChoiceRule{{1}, {2}, {}});
    program.statements.push_back(NormalRule{1, {2, 3}, {4, 5}});
    const ProgramIndex     index = index_program(program);
    const ScoringConstants consts{100.0, 100.0};

    AspWeights w;
    w.constraints   = 1;
    w.ratio_pos_neg = 2;
    w.horn          = 4;
    w.short_rule    = 8;
    // constraint: 1 + (1/1)*2 + 4 + 8
    REQUIRE(rule_score(program.statements[0], index, w, consts) == 15.0);

    AspWeights choice_w;
    choice_w.choice = 2;
    choice_w.normal = 5; // a one-headed choice rule is also normal-sized
    REQUIRE(rule_score(program.statements[1], index, choice_w, consts) == 205.0);

    AspWeights body_w;
    body_w.body   = 1;
    body_w.p_body = 2;
    body_w.n_body = 3;
    // |B|=4, |B+|=2, |B-|=2: 4 + 4 + 6 + ratio 1*0
    REQUIRE(rule_score(program.statements[2], index, body_w, consts) == 14.0);
}

TEST_CASE("recursive atoms feed rule scores", "[asp-config]") {
    AspProgram program;
    program.statements.push_back(NormalRule{1, {2}, {}});
    program.statements.push_back(NormalRule{2, {1}, {}});
    program.statements.push_back(NormalRule{3, {1}, {}});
    const ProgramIndex index = index_program(program);
    REQUIRE(index.recursive == std::set<AtomId>{1, 2});

    AspWeights w;
    w.rec_head = 1;
    w.rec_body = 10;
    // 3 <- 1: head not recursive, body atom 1 is
    REQUIRE(rule_score(program.statements[2], index, w, {}) == 10.0);
    // 1 <- 2: both ends recursive
    REQUIRE(rule_score(program.statements[0], index, w, {}) == 11.0);
}

TEST_CASE("aggregate_score reference value", "[asp-config]") {
    const AspProgram   program = parse_smodels(run_program_text()).first;
    const ProgramIndex index   = index_program(program);
    AspWeights         w;
    w.aggregate    = 10;
    w.neg_body_occ = 10;
    const auto& agg = std::get<AggregateDef>(program.statements[2]);
    REQUIRE(aggregate_score(agg, index, w, {}) == Catch::Approx(100003.33).margin(0.01));

    const AspWeights zeros;
    REQUIRE(aggregate_score(agg, index, zeros, {}) == 0.0);

    AspWeights ratio_only;
    ratio_only.aggregate_ratio_bound_size = 10;
    AspProgram tiny;
    tiny.statements.push_back(AggregateDef{2, AggregateKind::sum, 1, {{1, pos(1)}}});
    REQUIRE(aggregate_score(std::get<AggregateDef>(tiny.statements[0]), index_program(tiny),
                            ratio_only, {}) == 10.0);

    const AggregateDef empty{3, AggregateKind::sum, 1, {}};
    REQUIRE_THROWS_AS(aggregate_score(empty, index, w, {}), PreconditionError);
}

TEST_CASE("reorder_program reproduces the configured example", "[asp-config]") {
    const AspProgram    program = parse_smodels(run_program_text()).first;
    const AspWeightFile w       = parse_asp_weights(kExampleAspWeights);
    const AspProgram    out     = reorder_program(program, w.weights, w.constants);
    REQUIRE(rule_lines_of(write_smodels(out)) == kConfProgramRuleLines);
}

TEST_CASE("reorder_program with zero weights is the identity", "[asp-config]") {
    std::mt19937_64  rng(3);
    const AspWeights zeros;
    for (int round = 0; round < 20; ++round) {
        const AspProgram program = random_program(rng);
        REQUIRE(reorder_program(program, zeros, {}) == program);
    }
}

TEST_CASE("reorder_program preserves the statement multiset and models", "[asp-config]") {
    std::mt19937_64 rng(13);
    for (int round = 0; round < 40; ++round) {
        const AspProgram program = random_program(rng);
        const AspWeights w       = random_asp_weights(rng);
        const AspProgram out     = reorder_program(program, w, {});
        REQUIRE(statement_multiset(out) == statement_multiset(program));
        REQUIRE(out.symbol_table == program.symbol_table);
        REQUIRE(out.compute_sections == program.compute_sections);
        REQUIRE(enumerate_stable_models(out) == enumerate_stable_models(program));
    }
}

TEST_CASE("pinned opaque statements keep their positions", "[asp-config]") {
    AspProgram program;
    program.statements.push_back(NormalRule{1, {}, {}});
    program.statements.push_back(OpaqueStatement{{6, 0, 1, 0, 1, 1}});
    program.statements.push_back(NormalRule{2, {}, {}});
    AspWeights w;
    w.normal = 5;

    const AspProgram moved = reorder_program(program, w, {});
    REQUIRE(std::holds_alternative<OpaqueStatement>(moved.statements[2])); // sinks below scored rules

    const AspProgram pinned = reorder_program(program, w, {}, true);
    REQUIRE(std::holds_alternative<OpaqueStatement>(pinned.statements[1]));
}

TEST_CASE("scaling all weights keeps the statement order", "[asp-config]") {
    std::mt19937_64 rng(19);
    for (int round = 0; round < 20; ++round) {
        const AspProgram program = random_program(rng);
        const AspWeights w       = random_asp_weights(rng);
        AspWeights       scaled  = w;
        for (double* slot :
             {&scaled.head_occ, &scaled.body_occ, &scaled.pos_body_occ, &scaled.neg_body_occ,
              &scaled.short_body_occ, &scaled.short_pos_body_occ, &scaled.short_neg_body_occ,
              &scaled.aggregate_occ, &scaled.constraints, &scaled.normal, &scaled.disjunctive,
              &scaled.choice, &scaled.body, &scaled.p_body, &scaled.n_body, &scaled.ratio_pos_neg,
              &scaled.horn, &scaled.rec_head, &scaled.rec_body, &scaled.short_rule, &scaled.aggregate,
              &scaled.aggregate_size, &scaled.aggregate_ratio_bound_size}) {
            *slot *= 0.5;
        }
        REQUIRE(write_smodels(reorder_program(program, scaled, {})) ==
                write_smodels(reorder_program(program, w, {})));
    }
}

TEST_CASE("remap with zero weights is the identity", "[asp-config]") {
    std::mt19937_64  rng(29);
    const AspWeights zeros;
    for (int round = 0; round < 20; ++round) {
        const AspProgram program = random_program(rng);
        REQUIRE(remap_ids_by_score(program, zeros) == program);
    }
}

TEST_CASE("remap moves the top-scoring atom to id 1", "[asp-config]") {
    const AspProgram program = parse_smodels(run_program_text()).first;
    AspWeights       w;
    w.neg_body_occ = 10;
    const auto new_from_old = id_map_by_score(program, w);
    REQUIRE(new_from_old[2] == 1);
    // everything else keeps its relative ascending order
    REQUIRE(new_from_old[1] == 2);
    for (AtomId a = 3; a <= 7; ++a) { REQUIRE(new_from_old[static_cast<std::size_t>(a)] == a); }

    const AspProgram out = remap_ids_by_score(program, w);
    const auto&      r2  = std::get<DisjunctiveRule>(out.statements[1]);
    REQUIRE(r2.neg_body == std::vector<AtomId>{1});
    REQUIRE(out.symbol_table.at(1) == "p4");
}

TEST_CASE("remap is a bijection on stable models", "[asp-config]") {
    std::mt19937_64 rng(37);
    for (int round = 0; round < 30; ++round) {
        const AspProgram program      = random_program(rng);
        const AspWeights w            = random_asp_weights(rng);
        const auto       new_from_old = id_map_by_score(program, w);
        const AspProgram out          = apply_id_map(program, new_from_old);
        REQUIRE(enumerate_stable_models(out) ==
                mapped_models(enumerate_stable_models(program), new_from_old));
    }
}

TEST_CASE("remap composed with its inverse restores the bytes", "[asp-config]") {
    std::mt19937_64 rng(43);
    for (int round = 0; round < 20; ++round) {
        AspProgram program = random_program(rng);
        // opaque payloads are not id-mapped, so keep this one statement-free of them
        std::erase_if(program.statements, [](const Statement& s) {
            return std::holds_alternative<OpaqueStatement>(s);
        });
        const AspWeights w            = random_asp_weights(rng);
        const auto       new_from_old = id_map_by_score(program, w);
        const AspProgram there        = apply_id_map(program, new_from_old);
        const AspProgram back         = apply_id_map(there, invert_id_map(new_from_old));
        REQUIRE(write_smodels(back) == write_smodels(program));
    }
}

TEST_CASE("transformations never move literals between head and body parts", "[asp-config]") {
    std::mt19937_64 rng(47);
    for (int round = 0; round < 20; ++round) {
        const AspProgram program = random_program(rng);
        const AspWeights w       = random_asp_weights(rng);
        const AspProgram out     = reorder_program(program, w, {});
        const auto       before  = statement_multiset(program);
        const auto       after   = statement_multiset(out);
        REQUIRE(before == after); // token encodings pin each atom to its role
        const AspProgram mapped  = remap_ids_by_score(program, w);
        REQUIRE(mapped.statements.size() == program.statements.size());
        for (std::size_t k = 0; k < mapped.statements.size(); ++k) {
            REQUIRE(mapped.statements[k].index() == program.statements[k].index());
            if (const auto parts = rule_parts(program.statements[k])) {
                const auto mparts = rule_parts(mapped.statements[k]);
                REQUIRE(mparts->heads.size() == parts->heads.size());
                REQUIRE(mparts->pos_body->size() == parts->pos_body->size());
                REQUIRE(mparts->neg_body->size() == parts->neg_body->size());
            }
        }
    }
}

TEST_CASE("reorder then remap is deterministic and idempotent", "[asp-config]") {
    std::mt19937_64 rng(59);
    for (int round = 0; round < 20; ++round) {
        const AspProgram program = random_program(rng);
        const AspWeights w       = random_asp_weights(rng);
        const AspProgram once    = reorder_program(program, w, {});
        REQUIRE(reorder_program(program, w, {}) == once);
        REQUIRE(reorder_program(once, w, {}) == once);

        const AspProgram mapped = remap_ids_by_score(program, w);
        REQUIRE(remap_ids_by_score(mapped, w) == mapped);
    }
}
