#include "doctest.h"

#include <random>

#include "branchwork/engine.hpp"
#include "branchwork/smallrank.hpp"

using namespace branchwork;
namespace sr = branchwork::smallrank;

namespace {

sr::MWord random_mword(std::mt19937& rng, unsigned rank, unsigned max_sylls) {
    std::uniform_int_distribution<std::uint32_t> mask(0, (1u << rank) - 1);
    std::uniform_int_distribution<unsigned> sylls(0, max_sylls);
    sr::MBuilder bld;
    unsigned m = sylls(rng);
    bld.push_rooted(mask(rng));
    for (unsigned i = 0; i < m; ++i) {
        bld.push_b();
        bld.push_rooted(mask(rng));
    }
    return bld.take();
}

} // namespace

TEST_CASE("builder cancellation matches the free product") {
    sr::MBuilder bld;
    bld.push_b();
    bld.push_b();
    CHECK(bld.take().identity());

    sr::MBuilder bld2;
    bld2.push_b();
    bld2.push_rooted(3);
    bld2.push_rooted(3);
    bld2.push_b();
    CHECK(bld2.take().identity());

    sr::MBuilder bld3;
    bld3.push_rooted(1);
    bld3.push_b();
    bld3.push_rooted(2);
    sr::MWord w = bld3.take();
    CHECK(w.syllables() == 1);
    CHECK(w.translation() == 3);
}

TEST_CASE("section rule cases over masks") {
    unsigned rank = 4;
    CHECK(sr::rule(0, rank).kind == 2);
    for (unsigned i = 0; i < rank; ++i) {
        std::uint32_t v = ((1u << rank) - 1u) ^ (1u << i);
        CHECK(sr::rule(v, rank).kind == 1);
        CHECK(sr::rule(v, rank).mask == (1u << i));
    }
    CHECK(sr::rule(1, rank).kind == 0);
    CHECK(sr::rule(5, rank).kind == 0);
}

TEST_CASE("round trip through the general word type") {
    std::mt19937 rng(7);
    for (unsigned rank : {2u, 3u, 6u}) {
        for (int it = 0; it < 50; ++it) {
            sr::MWord w = random_mword(rng, rank, 5);
            Word gw = sr::to_word(w, 0, rank);
            sr::MWord back = sr::from_word(gw, rank);
            CHECK(back.parts == w.parts);
        }
    }
}

TEST_CASE("sections and length bounds agree with the engine") {
    std::mt19937 rng(11);
    for (unsigned rank : {2u, 3u, 5u, 6u}) {
        Engine eng(GroupSpec::kr(rank));
        for (int it = 0; it < 40; ++it) {
            sr::MWord w = random_mword(rng, rank, 4);
            Word gw = sr::to_word(w, 0, rank);
            CHECK(sr::syl_upper(w) == eng.syllable_length_upper(gw));
            for (std::uint32_t x = 0; x < (1u << rank); ++x) {
                sr::MWord sx = sr::section(w, x, rank);
                Word ex = eng.section1(gw, F2Vector::sparse([&] {
                    std::vector<BigInt> bits;
                    for (unsigned i = 0; i < rank; ++i)
                        if (x & (1u << i))
                            bits.push_back(i);
                    return bits;
                }()));
                CHECK(word_key(sr::to_word(sx, 1, rank)) == word_key(ex));
            }
        }
    }
}

TEST_CASE("single-letter shape test matches ball membership") {
    // B(1) over the conjugate-closed alphabet is exactly: rooted elements
    // and single conjugated directed letters
    unsigned rank = 3;
    Engine eng(GroupSpec::kr(rank));
    GeneratingSet s = make_generators(eng.group(), 0, GenKind::SStyle);
    std::mt19937 rng(13);
    for (int it = 0; it < 60; ++it) {
        sr::MWord w = random_mword(rng, rank, 2);
        Word gw = sr::to_word(w, 0, rank);
        bool in_ball1 = false;
        for (const Word& m : s.members)
            if (eng.equal(gw, m) == TriState::True)
                in_ball1 = true;
        CHECK(sr::shape_in_ball1(w) == in_ball1);
    }
}
