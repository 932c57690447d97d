#include "doctest.h"

#include "branchwork/json_io.hpp"
#include "branchwork/verify.hpp"

using namespace branchwork;

TEST_CASE("check reports serialize with a stable shape") {
    CheckReport rep = check_tetration();
    CHECK(rep.passed());
    io::json j = check_report_json(rep);
    CHECK(j["format"] == 1);
    CHECK(j["name"] == "check_tetration");
    CHECK(j["passed"] == true);
    CHECK(j["instances"].get<std::size_t>() == rep.instances);
    CHECK_FALSE(j.contains("counterexample"));
}

TEST_CASE("two-layer contraction sweep at a small rank") {
    CheckReport rep = check_two_layer_reduction(3, 3);
    CHECK(rep.passed());
    CHECK(rep.instances > 0);
    CHECK(rep.parameters["r"] == 3);
    CHECK(rep.parameters["radius"] == 3);
    // bad parameters are rejected up front
    CHECK_THROWS_AS(check_two_layer_reduction(1, 1), DomainError);
    CHECK_THROWS_AS(check_two_layer_reduction(3, 9), DomainError);
}

TEST_CASE("growing contraction sweep at a small radius") {
    CheckReport rep = check_growing_reduction(3, 2);
    CHECK(rep.passed());
    CHECK(rep.instances > 0);
    // only the smallest seed keeps the dense layers enumerable
    CHECK_THROWS_AS(check_growing_reduction(127, 2), DomainError);
}

TEST_CASE("chained contraction across ten layers") {
    CheckReport rep = check_2667();
    CHECK(rep.passed());
    CHECK(rep.parameters["mode"] == "representative_upper");
    CHECK(rep.instances > 0);
}

TEST_CASE("tetration bounds on the rank recurrence") {
    CheckReport rep = check_tetration();
    CHECK(rep.passed());
    CHECK(rep.instances >= 11);
}

TEST_CASE("commutator section tables at the smallest valid rank") {
    CheckReport rep = check_commutator_sections(6);
    CHECK(rep.passed());
    CHECK_THROWS_AS(check_commutator_sections(5), DomainError);
}

TEST_CASE("branching generators exist in both families") {
    CHECK(check_weakly_branch_generators(GroupSpec::kr(6)).passed());
    CHECK(check_weakly_branch_generators(GroupSpec::growing(3)).passed());
    CHECK(check_weakly_branch_generators(GroupSpec::growing(127)).passed());
}

TEST_CASE("layer transitivity at desk scale") {
    CheckReport rep = check_transitivity(GroupSpec::kr(3), 2);
    CHECK(rep.passed());
    CHECK(check_transitivity(GroupSpec::growing(3), 2).passed());
}

TEST_CASE("abstract-word realization lengths") {
    Engine eng(GroupSpec::kr(5));
    GeneratingSet s = make_generators(eng.group(), 0, GenKind::SStyle);
    // x alone: any nontrivial letter realizes it at length 1
    ChiResult one = chi_complexity(eng, s, {1}, 2);
    REQUIRE(one.total_length.has_value());
    CHECK(*one.total_length == 1);
    // xyx^-1y^-1: needs two letters that do not commute
    ChiResult comm = chi_complexity(eng, s, {1, 2, -1, -2}, 2);
    REQUIRE(comm.total_length.has_value());
    CHECK(*comm.total_length == 2);
    REQUIRE(comm.witness.size() == 2);
    // the witness really is a non-commuting pair
    Word g = comm.witness[0], h = comm.witness[1];
    CHECK(eng.is_trivial(eng.comm(g, h)) == TriState::False);
    // x^2: some ball-2 element has order above 2
    ChiResult sq = chi_complexity(eng, s, {1, 1}, 2);
    REQUIRE(sq.total_length.has_value());
    CHECK(*sq.total_length == 2);

    // malformed abstract words are rejected
    CHECK_THROWS_AS(chi_complexity(eng, s, {}, 1), DomainError);
    CHECK_THROWS_AS(chi_complexity(eng, s, {0}, 1), DomainError);
    CHECK_THROWS_AS(chi_complexity(eng, s, {1, -1}, 1), DomainError);
}

TEST_CASE("counterexample JSON replays against the engine") {
    // shape a report the way a failing sweep would and make sure every field
    // needed for independent replay round-trips
    Engine eng(GroupSpec::kr(3));
    Word w = eng.conj(Word::directed(0), Word::rooted(0, F2Vector::basis(1)));
    io::json ce = {
        {"what", "example"},
        {"word", io::to_json(w)},
        {"vertex", io::to_json(VertexPath::single(0, F2Vector::basis_bar(1)))},
        {"section", io::to_json(eng.section1(w, F2Vector::basis_bar(1)))},
    };
    Word back = io::word_from_json(ce["word"]);
    VertexPath at = io::vertex_from_json(ce["vertex"]);
    Word claimed = io::word_from_json(ce["section"]);
    CHECK(eng.equal(eng.section(back, at), claimed) == TriState::True);
}
