#include "doctest.h"

#include <random>

#include "branchwork/order.hpp"
#include "support/oracles.hpp"

using namespace branchwork;

namespace {
Word be0(const Engine& eng) {
    return eng.mul(Word::directed(0), Word::rooted(0, F2Vector::basis(0)));
}
} // namespace

TEST_CASE("anchor orders") {
    Engine eng(GroupSpec::kr(3));
    CHECK(order(eng, Word::identity(0)) == OrderResult{OrderResult::Kind::Finite, 0});
    CHECK(order(eng, Word::directed(0)) == OrderResult{OrderResult::Kind::Finite, 1});
    CHECK(order(eng, Word::rooted(0, F2Vector::basis(1))) ==
          OrderResult{OrderResult::Kind::Finite, 1});
    // b e0 squares to a word with a first-layer section of order 4
    CHECK(order(eng, be0(eng)) == OrderResult{OrderResult::Kind::Finite, 2});
}

TEST_CASE("order results satisfy their defining property") {
    std::mt19937 rng(53);
    for (GroupSpec spec : {GroupSpec::kr(5), GroupSpec::kr(3), GroupSpec::growing(3)}) {
        Engine eng(spec);
        for (int it = 0; it < 25; ++it) {
            Word w = testsupport::random_word(eng, rng, 6);
            OrderResult r = order(eng, w);
            REQUIRE(r.finite());
            CHECK(eng.is_trivial(eng.pow(w, 1ul << r.exponent)) == TriState::True);
            if (r.exponent > 0)
                CHECK(eng.is_trivial(eng.pow(w, 1ul << (r.exponent - 1))) ==
                      TriState::False);
        }
    }
}

TEST_CASE("order agrees with plain doubling") {
    std::mt19937 rng(59);
    for (GroupSpec spec : {GroupSpec::kr(3), GroupSpec::kr(5), GroupSpec::growing(3)}) {
        Engine eng(spec);
        for (int it = 0; it < 25; ++it) {
            Word w = testsupport::random_word(eng, rng, 5);
            auto slow = testsupport::doubling_order_exp(eng, w, 12);
            REQUIRE(slow.has_value());
            OrderResult fast = order(eng, w);
            REQUIRE(fast.finite());
            CHECK(fast.exponent == *slow);
        }
    }
}

TEST_CASE("the infinite dihedral witness exceeds every budget") {
    Engine eng(GroupSpec::kr(1));
    OrderResult r = order(eng, be0(eng));
    CHECK(r.kind == OrderResult::Kind::ExceededBudget);
    // the reported exponent is the order on the default partial depth
    CHECK(r.exponent == Budgets{}.order_partial_depth);
    CHECK(to_string(r).find("2^") != std::string::npos);
}

TEST_CASE("rank 2 is the other degenerate case") {
    // at rank 2 the complement of one basis vector is the other, so the
    // directed generator chases b e_0 -> b e_1 -> b e_0 ... down the tree
    // and b e_1 has infinite order
    Engine eng(GroupSpec::kr(2));
    Word w = eng.mul(Word::directed(0), Word::rooted(0, F2Vector::basis(1)));
    OrderResult r = order(eng, w);
    CHECK(r.kind == OrderResult::Kind::ExceededBudget);
    CHECK_FALSE(testsupport::doubling_order_exp(eng, w, 12).has_value());
}

TEST_CASE("truncated orders grow with depth on the infinite witness") {
    Engine eng(GroupSpec::kr(1));
    Word w = be0(eng);
    unsigned prev = 0;
    for (unsigned depth = 1; depth <= 8; ++depth) {
        unsigned e = order_truncated_exp(eng, w, depth);
        // b e0 acts on the depth-d line as a cycle of length 2^d
        CHECK(e == depth);
        CHECK((e > prev || depth == 1));
        prev = e;
    }
}

TEST_CASE("truncated order divides the full order") {
    std::mt19937 rng(61);
    Engine eng(GroupSpec::kr(3));
    for (int it = 0; it < 20; ++it) {
        Word w = testsupport::random_word(eng, rng, 6);
        OrderResult full = order(eng, w);
        REQUIRE(full.finite());
        for (unsigned depth = 1; depth <= 4; ++depth)
            CHECK(order_truncated_exp(eng, w, depth) <= full.exponent);
    }
}

TEST_CASE("a shared cache changes nothing") {
    std::mt19937 rng(67);
    Engine eng(GroupSpec::kr(3));
    OrderCache cache;
    std::vector<Word> words;
    for (int it = 0; it < 30; ++it)
        words.push_back(testsupport::random_word(eng, rng, 6));
    for (const Word& w : words) {
        OrderResult bare = order(eng, w);
        OrderResult cached = order(eng, w, &cache);
        OrderResult again = order(eng, w, &cache);
        CHECK(bare == cached);
        CHECK(bare == again);
    }
}
