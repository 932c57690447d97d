#include "doctest.h"

#include "branchwork/group.hpp"
#include "support/oracles.hpp"

using namespace branchwork;

TEST_CASE("constant family keeps its rank and rule") {
    GroupSpec k5 = GroupSpec::kr(5);
    for (unsigned l = 0; l < 8; ++l) {
        CHECK(k5.rank_small(l) == 5);
        CHECK_FALSE(k5.uses_enumeration_rule(l));
    }
    CHECK_THROWS_AS(GroupSpec::kr(0), DomainError);
}

TEST_CASE("growing family ranks follow the recurrence in level thirds") {
    GroupSpec g = GroupSpec::growing(3);
    unsigned expect[] = {3, 3, 3, 7, 7, 7, 127, 127, 127};
    for (unsigned l = 0; l < 9; ++l)
        CHECK(g.rank_small(l) == expect[l]);
    // level 9 rank is 2^127 - 1: exactly representable, not enumerable
    auto r9 = g.rank_exact(9);
    REQUIRE(r9.has_value());
    CHECK(*r9 == (BigInt(1) << 127) - 1);
    CHECK_THROWS_AS(g.rank_small(9), BudgetError);
    // level 12 rank only exists as a bracket
    CHECK_FALSE(g.rank_exact(12).has_value());
    CHECK(g.rank(12) >= g.rank(9));

    // the base offset shifts the whole schedule
    GroupSpec shifted = GroupSpec::growing(3, 2);
    CHECK(shifted.rank_small(0) == 3);
    CHECK(shifted.rank_small(1) == 7);
    CHECK(shifted.uses_enumeration_rule(0));
    CHECK_FALSE(shifted.uses_enumeration_rule(1));
}

TEST_CASE("enumeration-rule schedule sits on residue 2") {
    GroupSpec g = GroupSpec::growing(3);
    for (unsigned l = 0; l < 12; ++l)
        CHECK(g.uses_enumeration_rule(l) == (l % 3 == 2));
}

TEST_CASE("bar rule sections of the directed generator") {
    GroupSpec k3 = GroupSpec::kr(3);
    // zero vertex: the next directed generator
    auto at0 = directed_section_rule(k3, 0, F2Vector::zero());
    REQUIRE(at0.has_value());
    CHECK(at0->directed);
    // bar(e_i) vertices: e_i
    for (unsigned i = 0; i < 3; ++i) {
        auto s = directed_section_rule(k3, 0, F2Vector::basis_bar(i).canonical(BigInt(3)));
        REQUIRE(s.has_value());
        CHECK_FALSE(s->directed);
        CHECK(s->rooted == F2Vector::basis(i));
    }
    // a two-bit vertex is a bar vertex in disguise: S{0,1} = bar(e_2)
    auto disguised = directed_section_rule(k3, 0, F2Vector::sparse({0, 1}));
    REQUIRE(disguised.has_value());
    CHECK(disguised->rooted == F2Vector::basis(2));
    // single-bit and all-ones vertices are inactive at rank 3
    CHECK_FALSE(directed_section_rule(k3, 0, F2Vector::basis(0)).has_value());
    CHECK_FALSE(directed_section_rule(k3, 0, F2Vector::all_ones()).has_value());
}

TEST_CASE("rank-1 degenerate bar rule keeps both vertices busy") {
    GroupSpec k1 = GroupSpec::kr(1);
    auto at0 = directed_section_rule(k1, 0, F2Vector::zero());
    REQUIRE(at0.has_value());
    CHECK(at0->directed);
    auto at1 = directed_section_rule(k1, 0, F2Vector::basis(0));
    REQUIRE(at1.has_value());
    CHECK_FALSE(at1->directed);
    // canonical spelling of e_0 at rank 1 is the all-ones form
    CHECK(at1->rooted == F2Vector::basis(0).canonical(BigInt(1)));
    CHECK(at1->rooted == F2Vector::all_ones());
}

TEST_CASE("enumeration rule maps index i to basis i-1") {
    GroupSpec g = GroupSpec::growing(3); // level 2 enumerates, rank 3 -> 7
    auto at0 = directed_section_rule(g, 2, F2Vector::zero());
    REQUIRE(at0.has_value());
    CHECK(at0->directed);
    for (BigInt i = 1; i < 8; ++i) {
        F2Vector x = enumeration_vector(i, BigInt(3));
        auto s = directed_section_rule(g, 2, x);
        REQUIRE(s.has_value());
        CHECK_FALSE(s->directed);
        CHECK(s->rooted == F2Vector::basis(i - 1));
    }
}

TEST_CASE("enumeration is the binary expansion") {
    CHECK(enumeration_index(F2Vector::zero(), BigInt(3)) == 0);
    CHECK(enumeration_index(F2Vector::basis(0), BigInt(3)) == 1);
    CHECK(enumeration_index(F2Vector::basis(2), BigInt(3)) == 4);
    CHECK(enumeration_index(F2Vector::sparse({0, 2}), BigInt(3)) == 5);
    // cosparse needs the rank: C{} at rank 3 is e0+e1+e2, index 7
    CHECK(enumeration_index(F2Vector::cosparse({}), BigInt(3)) == 7);
    CHECK(enumeration_index(F2Vector::cosparse({1}), BigInt(3)) == 5);
    // round trip both ways
    for (BigInt i = 0; i < 8; ++i)
        CHECK(enumeration_index(enumeration_vector(i, BigInt(3)), BigInt(3)) == i);
    // a lone huge bit is a perfectly good sparse vector
    CHECK(enumeration_vector(BigInt(1) << 40, std::nullopt) ==
          F2Vector::basis(40));
    // but dense supports hit the support budget
    Budgets tiny;
    tiny.support = 16;
    CHECK_THROWS_AS(
        enumeration_vector((BigInt(1) << 41) - 1, std::nullopt, tiny),
        BudgetError);
    // and out-of-range indices are rejected against an exact rank
    CHECK_THROWS_AS(enumeration_vector(8, BigInt(3)), DomainError);
}

TEST_CASE("generating sets have the documented shapes") {
    GroupSpec k3 = GroupSpec::kr(3);
    GeneratingSet e = make_generators(k3, 0, GenKind::EStyle);
    CHECK(e.members.size() == 4); // e0, e1, e2, directed
    GeneratingSet s = make_generators(k3, 0, GenKind::SStyle);
    CHECK(s.members.size() == 16); // 8 rooted (with id) + 8 conjugates
    // identity is a member of the S-style set
    bool has_id = false;
    for (const Word& w : s.members)
        has_id |= w.letters.empty();
    CHECK(has_id);

    // E-style scales to astronomically ranked levels only when enumerable
    GroupSpec g = GroupSpec::growing(3);
    CHECK(make_generators(g, 6, GenKind::EStyle).members.size() == 128);
    CHECK_THROWS_AS(make_generators(g, 9, GenKind::EStyle), BudgetError);
}
