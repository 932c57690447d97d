#include "doctest.h"

#include <random>

#include "branchwork/engine.hpp"
#include "support/oracles.hpp"

using namespace branchwork;
using testsupport::DenseOracle;

namespace {

VertexPath path1(F2Vector x) { return VertexPath::single(0, std::move(x)); }

} // namespace

TEST_CASE("directed generator has its defining portrait") {
    Engine eng(GroupSpec::kr(3));
    Word b = Word::directed(0);
    CHECK(eng.first_layer_translation(b) == F2Vector::zero());
    // section at the zero vertex is the next directed generator
    Word s0 = eng.section1(b, F2Vector::zero());
    REQUIRE(s0.letters.size() == 1);
    CHECK(s0.letters[0].directed);
    CHECK(s0.level == 1);
    // at bar(e_i) it is e_i, elsewhere trivial
    for (unsigned i = 0; i < 3; ++i) {
        Word si = eng.section1(b, F2Vector::basis_bar(i));
        REQUIRE(si.letters.size() == 1);
        CHECK(si.letters[0].rooted == F2Vector::basis(i));
    }
    CHECK(eng.section1(b, F2Vector::basis(0)).letters.empty());
}

TEST_CASE("rooted letters translate the first layer and nothing else") {
    Engine eng(GroupSpec::kr(3));
    Word r = Word::rooted(0, F2Vector::sparse({0, 2}));
    // translations come back canonical: at rank 3 the cosparse spelling of
    // e0+e2 is shorter
    CHECK(eng.first_layer_translation(r) ==
          F2Vector::sparse({0, 2}).canonical(BigInt(3)));
    CHECK(eng.first_layer_translation(r) == F2Vector::cosparse({1}));
    for (std::uint32_t m = 0; m < 8; ++m) {
        std::vector<BigInt> bits;
        for (unsigned i = 0; i < 3; ++i)
            if (m & (1u << i))
                bits.push_back(i);
        F2Vector x = F2Vector::sparse(bits);
        CHECK(eng.section1(r, x).letters.empty());
        VertexPath moved = eng.act(r, path1(x));
        CHECK(moved.parts[0] == add(x, F2Vector::sparse({0, 2})).canonical(BigInt(3)));
    }
}

TEST_CASE("sections multiply along the action") {
    // (ab)|_x = a|_x * b|_(x.a), checked on random pairs in both families
    std::mt19937 rng(23);
    for (GroupSpec spec : {GroupSpec::kr(3), GroupSpec::growing(3)}) {
        Engine eng(spec);
        unsigned long rank = spec.rank_small(0);
        for (int it = 0; it < 30; ++it) {
            Word a = testsupport::random_word(eng, rng, 6);
            Word b = testsupport::random_word(eng, rng, 6);
            Word ab = eng.mul(a, b);
            for (std::uint32_t m = 0; m < (1u << rank); ++m) {
                std::vector<BigInt> bits;
                for (unsigned i = 0; i < rank; ++i)
                    if (m & (1u << i))
                        bits.push_back(i);
                F2Vector x = F2Vector::sparse(bits);
                F2Vector xa = eng.act(a, path1(x)).parts[0];
                Word lhs = eng.section1(ab, x);
                Word rhs = eng.mul(eng.section1(a, x), eng.section1(b, xa));
                CHECK(eng.equal(lhs, rhs) == TriState::True);
            }
        }
    }
}

TEST_CASE("acting twice composes") {
    std::mt19937 rng(29);
    Engine eng(GroupSpec::growing(3));
    for (int it = 0; it < 40; ++it) {
        Word a = testsupport::random_word(eng, rng, 5);
        Word b = testsupport::random_word(eng, rng, 5);
        Word ab = eng.mul(a, b);
        // a random depth-3 vertex
        std::uniform_int_distribution<std::uint32_t> d3(0, 7);
        VertexPath v{0, {F2Vector::basis(d3(rng) % 3), F2Vector::basis(d3(rng) % 3),
                         F2Vector::basis(d3(rng) % 3)}};
        VertexPath lhs = eng.act(ab, v);
        VertexPath rhs = eng.act(b, eng.act(a, v));
        REQUIRE(lhs.parts.size() == rhs.parts.size());
        for (std::size_t i = 0; i < lhs.parts.size(); ++i)
            CHECK(lhs.parts[i] == rhs.parts[i]);
    }
}

TEST_CASE("sections against the dense model") {
    std::mt19937 rng(31);
    DenseOracle oracle(GroupSpec::kr(3), 4);
    DenseOracle down = oracle.child();
    Engine eng(GroupSpec::kr(3));
    for (int it = 0; it < 25; ++it) {
        Word w = testsupport::random_word(eng, rng, 6);
        auto wp = oracle.word_perm(w);
        std::uint32_t stride = static_cast<std::uint32_t>(oracle.leaves() / 8);
        for (std::uint32_t x = 0; x < 8; ++x) {
            std::vector<BigInt> bits;
            for (unsigned i = 0; i < 3; ++i)
                if (x & (1u << i))
                    bits.push_back(i);
            // leaf (x, rest) must land on (x.w, rest . w|_x): this pins the
            // engine's action and section against the flat permutation
            F2Vector xa = eng.act(w, path1(F2Vector::sparse(bits))).parts[0];
            std::uint32_t xm = static_cast<std::uint32_t>(xa.mask64(3));
            Word sec = eng.section1(w, F2Vector::sparse(bits));
            sec.level = 0; // the child oracle models the shifted-up group
            auto sp = down.word_perm(sec);
            for (std::uint32_t off = 0; off < stride; ++off)
                CHECK(wp[x * stride + off] == xm * stride + sp[off]);
        }
    }
}

TEST_CASE("word problem against the dense model, both families") {
    std::mt19937 rng(37);
    for (GroupSpec spec : {GroupSpec::kr(3), GroupSpec::growing(3)}) {
        unsigned depth = spec.family == Family::Kr ? 4 : 3;
        DenseOracle oracle(spec, depth);
        Engine eng(spec);
        for (int it = 0; it < 60; ++it) {
            Word w = testsupport::random_word(eng, rng, 6);
            bool oracle_id = oracle.is_identity(oracle.word_perm(w));
            TriState trunc = eng.is_trivial_truncated(w, depth);
            REQUIRE(trunc != TriState::Unknown);
            CHECK((trunc == TriState::True) == oracle_id);
            TriState full = eng.is_trivial(w);
            REQUIRE(full != TriState::Unknown);
            if (full == TriState::True)
                CHECK(oracle_id);
            if (!oracle_id)
                CHECK(full == TriState::False);
        }
    }
}

TEST_CASE("equality is a congruence on samples") {
    std::mt19937 rng(41);
    Engine eng(GroupSpec::kr(2));
    for (int it = 0; it < 20; ++it) {
        Word a = testsupport::random_word(eng, rng, 5);
        Word b = testsupport::random_word(eng, rng, 5);
        Word c = testsupport::random_word(eng, rng, 4);
        if (eng.equal(a, b) == TriState::True) {
            CHECK(eng.equal(eng.mul(a, c), eng.mul(b, c)) == TriState::True);
            CHECK(eng.equal(eng.conj(a, c), eng.conj(b, c)) == TriState::True);
        }
        CHECK(eng.equal(a, a) == TriState::True);
        CHECK(eng.equal(eng.mul(a, inverse(a)), Word::identity(0)) ==
              TriState::True);
    }
}

TEST_CASE("generator relations") {
    for (GroupSpec spec : {GroupSpec::kr(1), GroupSpec::kr(5), GroupSpec::growing(3)}) {
        Engine eng(spec);
        Word b = Word::directed(0);
        CHECK(eng.is_trivial(eng.pow(b, 2)) == TriState::True);
        CHECK(eng.is_trivial(b) == TriState::False);
        Word e0 = Word::rooted(0, F2Vector::basis(0));
        CHECK(eng.is_trivial(eng.pow(e0, 2)) == TriState::True);
        CHECK(eng.is_trivial(e0) == TriState::False);
    }
}

TEST_CASE("active vertex reports cover reality") {
    std::mt19937 rng(43);
    Engine eng(GroupSpec::kr(3));
    for (int it = 0; it < 30; ++it) {
        Word w = testsupport::random_word(eng, rng, 6);
        auto active = eng.active_explicit(w);
        for (std::uint32_t x = 0; x < 8; ++x) {
            std::vector<BigInt> bits;
            for (unsigned i = 0; i < 3; ++i)
                if (x & (1u << i))
                    bits.push_back(i);
            F2Vector v = F2Vector::sparse(bits).canonical(BigInt(3));
            Word sec = eng.section1(w, v);
            if (!sec.letters.empty()) {
                bool listed = false;
                for (const auto& a : active)
                    listed |= a == v;
                CHECK(listed);
            }
        }
    }
}

TEST_CASE("section probe certifies what it claims") {
    std::mt19937 rng(47);
    Engine eng(GroupSpec::kr(3));
    for (int it = 0; it < 20; ++it) {
        // squares always stabilize the first layer
        Word r = testsupport::random_word(eng, rng, 6);
        Word w = eng.mul(r, r);
        REQUIRE(eng.first_layer_translation(w).is_zero());
        SectionProbe probe = eng.section_probe(w);
        for (std::uint32_t x = 0; x < 8; ++x) {
            std::vector<BigInt> bits;
            for (unsigned i = 0; i < 3; ++i)
                if (x & (1u << i))
                    bits.push_back(i);
            F2Vector v = F2Vector::sparse(bits).canonical(BigInt(3));
            bool probed = false;
            for (const auto& p : probe.points)
                probed |= p == v;
            if (probed)
                continue;
            Word sec = eng.section1(w, v);
            if (!probe.parity_witness) {
                CHECK(sec.letters.empty());
            } else if (!sec.letters.empty()) {
                // away from the probe points, leftovers are single rooted
                // letters (order two), never anything longer
                CHECK(sec.letters.size() == 1);
                CHECK_FALSE(sec.letters[0].directed);
            }
        }
    }
}

TEST_CASE("portraits and fingerprints separate and join correctly") {
    Engine eng(GroupSpec::kr(3));
    Word b = Word::directed(0);
    Word e0 = Word::rooted(0, F2Vector::basis(0));
    Portrait pb = eng.portrait(b, 1);
    CHECK(pb.translation == F2Vector::zero());
    REQUIRE(pb.children.size() == 4); // zero vertex and three bar vertices
    CHECK(pb.children[0].first == F2Vector::zero());

    CHECK(eng.fingerprint(b, 3) == eng.fingerprint(b, 3));
    CHECK(eng.fingerprint(b, 3) != eng.fingerprint(e0, 3));
    // equal words, different normal-form spellings
    Word spelled = eng.make(
        0, {Letter::make_rooted(F2Vector::basis(0)), Letter::make_directed(),
            Letter::make_directed(), Letter::make_rooted(F2Vector::basis(0))});
    CHECK(spelled.letters.empty());
    CHECK(eng.fingerprint(spelled, 3) == eng.fingerprint(Word::identity(0), 3));
}

TEST_CASE("budget exhaustion surfaces as Unknown or BudgetError, never silence") {
    // K_1 words of growing depth against a tiny recursion budget
    Budgets tight;
    tight.recursion_depth = 2;
    Engine eng(GroupSpec::kr(1), tight);
    Word w = eng.mul(Word::directed(0), Word::rooted(0, F2Vector::basis(0)));
    // (b e0)^8 is trivial on depth 3 but needs deeper recursion to certify
    Word p8 = eng.pow(w, 8);
    CHECK(eng.is_trivial(p8) == TriState::Unknown);

    Budgets roomy;
    Engine eng2(GroupSpec::kr(1), roomy);
    CHECK(eng2.is_trivial(eng2.pow(w, 8)) == TriState::False);
}
