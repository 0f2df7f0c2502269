#include "testsupport.hpp"

#include <ordo/errors.hpp>
#include <ordo/semantics.hpp>
#include <ordo/smodels.hpp>
#include <ordo/synth.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace ordo;

TEST_CASE("smallest instance has the single expected stable model", "[synth]") {
    const AspProgram program = generate_synthetic({1, 1, 1, 1});
    const auto       models  = enumerate_stable_models(program);
    REQUIRE(models.size() == 1);
    std::set<std::string> names;
    for (AtomId a : models.begin()->true_atoms) { names.insert(program.symbol_table.at(a)); }
    REQUIRE(names == std::set<std::string>{"in(1,1)", "col(1,c1)"});
}

TEST_CASE("two pigeons cannot share one hole", "[synth]") {
    REQUIRE(enumerate_stable_models(generate_synthetic({2, 1, 2, 1})).empty());
}

TEST_CASE("hole assignments times colourings", "[synth]") {
    const auto models = enumerate_stable_models(generate_synthetic({2, 2, 2, 2}));
    REQUIRE(models.size() == 4);
}

TEST_CASE("more pigeons than holes is unsatisfiable", "[synth]") {
    for (int p = 2; p <= 4; ++p) {
        for (int h = 1; h < p && p + h <= 6; ++h) {
            REQUIRE(enumerate_stable_models(generate_synthetic({p, h, 1, 1}), 18).empty());
        }
    }
}

TEST_CASE("more nodes than colours is unsatisfiable", "[synth]") {
    REQUIRE(enumerate_stable_models(generate_synthetic({1, 1, 1, 2}), 18).empty());
    REQUIRE(enumerate_stable_models(generate_synthetic({1, 1, 2, 3}), 18).empty());
    REQUIRE(enumerate_stable_models(generate_synthetic({1, 1, 1, 4}), 20).empty());
    REQUIRE(enumerate_stable_models(generate_synthetic({1, 1, 2, 4}), 24).empty());
}

TEST_CASE("generation is deterministic and well formed", "[synth]") {
    const AspProgram a = generate_synthetic({3, 2, 2, 2}, 0);
    const AspProgram b = generate_synthetic({3, 2, 2, 2}, 99);
    REQUIRE(write_smodels(a) == write_smodels(b)); // the seed is reserved, not semantic

    const auto [back, diag] = parse_smodels(write_smodels(a));
    REQUIRE(diag.warnings.empty());
    REQUIRE(back == a);
    REQUIRE(recursive_atoms(a).empty());

    REQUIRE_THROWS_AS(generate_synthetic({0, 1, 1, 1}), PreconditionError);
}
