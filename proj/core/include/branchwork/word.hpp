#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "branchwork/common.hpp"
#include "branchwork/f2vec.hpp"

namespace branchwork {

// One letter of a word at a fixed tree level: either a rooted element of the
// level's GF(2) group (nonzero in normal form) or the level's directed
// generator. All letters are involutions.
struct Letter {
    bool directed = false;
    F2Vector rooted; // meaningful only when !directed

    static Letter make_directed() {
        Letter l;
        l.directed = true;
        return l;
    }
    static Letter make_rooted(F2Vector v) {
        Letter l;
        l.rooted = std::move(v);
        return l;
    }

    friend bool operator==(const Letter& a, const Letter& b) {
        if (a.directed != b.directed)
            return false;
        return a.directed || a.rooted == b.rooted;
    }
    friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
};

// Group word pinned to a tree level. letters is a normal form in the free
// product (rooted group) * C2: rooted letters are nonzero and no two
// consecutive letters come from the same factor.
struct Word {
    unsigned level = 0;
    std::vector<Letter> letters;

    bool empty() const { return letters.empty(); }

    static Word identity(unsigned level) { return Word{level, {}}; }
    static Word directed(unsigned level) {
        return Word{level, {Letter::make_directed()}};
    }
    static Word rooted(unsigned level, F2Vector v);

    friend bool operator==(const Word& a, const Word& b) {
        return a.level == b.level && a.letters == b.letters;
    }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
};

// Free-product reduction: merge adjacent rooted letters over GF(2), drop
// zeros, cancel directed pairs. Letters are taken left to right. When the
// level's rank is known exactly, pass it so merged vectors stay canonical
// (zero then shows up as SPARSE{} regardless of polarity history); at ranks
// too large to know exactly, sparse/cosparse never collide and no
// canonicalization is needed.
Word normalize(unsigned level, const std::vector<Letter>& letters,
               const std::optional<BigInt>& exact_rank = std::nullopt,
               const Budgets& budgets = {});

Word mul(const Word& a, const Word& b,
         const std::optional<BigInt>& exact_rank = std::nullopt,
         const Budgets& budgets = {});
Word inverse(const Word& w);
// by^-1 * w * by
Word conjugate(const Word& w, const Word& by,
               const std::optional<BigInt>& exact_rank = std::nullopt,
               const Budgets& budgets = {});
// x^-1 y^-1 x y
Word commutator(const Word& x, const Word& y,
                const std::optional<BigInt>& exact_rank = std::nullopt,
                const Budgets& budgets = {});
Word power(const Word& w, unsigned long e,
           const std::optional<BigInt>& exact_rank = std::nullopt,
           const Budgets& budgets = {});

std::size_t syllable_count(const Word& w); // number of directed letters

// Deterministic compact encoding of the normal form, usable as a map key.
std::string word_key(const Word& w);

} // namespace branchwork
