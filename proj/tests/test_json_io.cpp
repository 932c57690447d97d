#include "doctest.h"

#include <random>

#include "branchwork/arith.hpp"
#include "branchwork/json_io.hpp"
#include "support/oracles.hpp"

using namespace branchwork;
using io::json;

TEST_CASE("vector JSON round trips, including astronomical indices") {
    std::vector<F2Vector> vals = {
        F2Vector::zero(),
        F2Vector::basis(2),
        F2Vector::sparse({0, 5, 17}),
        F2Vector::cosparse({}),
        F2Vector::cosparse({1, 3}),
        F2Vector::basis((BigInt(1) << 127) - 1),
    };
    for (const auto& v : vals) {
        json j = io::to_json(v);
        CHECK(io::f2vector_from_json(j) == v);
    }
    // big indices are decimal strings, not floats
    json j = io::to_json(F2Vector::basis((BigInt(1) << 127) - 1));
    CHECK(j["support"][0] == "170141183460469231731687303715884105727");
}

TEST_CASE("vector JSON rejects malformed input") {
    CHECK_THROWS_AS(io::f2vector_from_json(json{{"polarity", "dense"},
                                                {"support", json::array()}}),
                    DomainError);
    CHECK_THROWS_AS(io::f2vector_from_json(json{{"support", json::array()}}),
                    DomainError);
    CHECK_THROWS_AS(io::f2vector_from_json(json{{"polarity", "sparse"},
                                                {"support", "nope"}}),
                    DomainError);
    CHECK_THROWS_AS(
        io::f2vector_from_json(json{{"polarity", "sparse"},
                                    {"support", json::array({"12x"})}}),
        DomainError);
    CHECK_THROWS_AS(
        io::f2vector_from_json(json{{"polarity", "sparse"},
                                    {"support", json::array({"3", "2"})}}),
        DomainError);
}

TEST_CASE("tower JSON round trips both forms") {
    TowerInt exact = tetr(2, 4);
    CHECK(io::tower_from_json(io::to_json(exact)) == exact);
    TowerInt big = tetr(2, 7);
    TowerInt back = io::tower_from_json(io::to_json(big));
    CHECK(back == big);
    CHECK_FALSE(back.is_exact());
    CHECK_THROWS_AS(io::tower_from_json(json{{"nope", 1}}), DomainError);
}

TEST_CASE("word JSON round trips and normalizes on input") {
    std::mt19937 rng(73);
    Engine eng(GroupSpec::growing(3));
    for (int it = 0; it < 30; ++it) {
        Word w = testsupport::random_word(eng, rng, 6);
        Word back = io::word_from_json(io::to_json(w));
        CHECK(back == w);
    }
    // unnormalized spellings collapse on the way in
    json doubled = json::parse(R"({"level":0,"letters":[
        {"directed":true},{"directed":true}]})");
    CHECK(io::word_from_json(doubled).letters.empty());
    CHECK_THROWS_AS(io::word_from_json(json{{"level", 0}}), DomainError);
    CHECK_THROWS_AS(
        io::word_from_json(json::parse(
            R"({"level":0,"letters":[{"directed":false}]})")),
        DomainError);
}

TEST_CASE("vertex path JSON round trips") {
    VertexPath v{1, {F2Vector::basis(0), F2Vector::cosparse({2})}};
    VertexPath back = io::vertex_from_json(io::to_json(v));
    CHECK(back.start_level == 1);
    REQUIRE(back.parts.size() == 2);
    CHECK(back.parts[0] == v.parts[0]);
    CHECK(back.parts[1] == v.parts[1]);
}

TEST_CASE("portrait JSON round trips with sorted children") {
    Engine eng(GroupSpec::kr(3));
    Word w = eng.mul(Word::directed(0),
                     eng.conj(Word::directed(0),
                              Word::rooted(0, F2Vector::basis(1))));
    Portrait p = eng.portrait(w, 3);
    Portrait back = io::portrait_from_json(io::to_json(p));
    CHECK(back == p);
    for (std::size_t i = 1; i < back.children.size(); ++i)
        CHECK(back.children[i - 1].first < back.children[i].first);
}

TEST_CASE("group specs round trip") {
    for (GroupSpec spec : {GroupSpec::kr(1), GroupSpec::kr(7),
                           GroupSpec::growing(3), GroupSpec::growing(127, 2)}) {
        CHECK(io::spec_from_json(io::to_json(spec)) == spec);
    }
    CHECK_THROWS_AS(io::spec_from_json(json{{"family", "H"}}), DomainError);
    CHECK_THROWS_AS(io::spec_from_json(json{{"family", "Kr"}, {"r", 0}}),
                    DomainError);
}

TEST_CASE("vector literals parse back") {
    for (const auto& v : {F2Vector::sparse({1, 5}), F2Vector::cosparse({}),
                          F2Vector::zero()}) {
        CHECK(io::f2vector_from_repr(v.repr()) == v);
    }
    CHECK_THROWS_AS(io::f2vector_from_repr("X{1}"), DomainError);
    CHECK_THROWS_AS(io::f2vector_from_repr("S{x}"), DomainError);
}

TEST_CASE("emitted JSON is deterministic") {
    Engine eng(GroupSpec::kr(3));
    std::mt19937 rng(79);
    for (int it = 0; it < 10; ++it) {
        Word w = testsupport::random_word(eng, rng, 6);
        CHECK(io::to_json(w).dump() == io::to_json(w).dump());
        CHECK(io::to_json(eng.portrait(w, 2)).dump() ==
              io::to_json(eng.portrait(w, 2)).dump());
    }
}
