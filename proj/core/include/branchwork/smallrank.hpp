#pragma once

#include <cstdint>
#include <vector>

#include "branchwork/common.hpp"
#include "branchwork/word.hpp"

namespace branchwork {
namespace smallrank {

// Compact constant-rank word calculus over bit masks, for ranks 2..30. A
// word is stored as p_0 b p_1 b ... b p_m (parts are rooted masks, inner
// parts nonzero after normalization); m == 0 means a purely rooted element.
// Semantics agree with the Engine on Kr specs; the agreement is what the
// cross-validation tests pin down. Exists because the layer-2 section sweeps
// touch millions of words and the general engine's allocation cost dominates
// there.
struct MWord {
    std::vector<std::uint32_t> parts{0};

    bool identity() const { return parts.size() == 1 && parts[0] == 0; }
    std::size_t syllables() const { return parts.size() - 1; }
    std::uint32_t translation() const {
        std::uint32_t t = 0;
        for (std::uint32_t p : parts)
            t ^= p;
        return t;
    }
};

// builder with free-product cancellation
struct MBuilder {
    std::vector<std::uint32_t> parts{0};

    void push_rooted(std::uint32_t mask) { parts.back() ^= mask; }
    void push_b() {
        if (parts.size() >= 2 && parts.back() == 0)
            parts.pop_back();
        else
            parts.push_back(0);
    }
    MWord take() { return MWord{std::move(parts)}; }
};

// directed-generator section at first-layer vertex v, bar rule: 0 is the
// directed vertex, complement-of-one-bit vertices map to that basis bit,
// everything else is inactive. kind: 0 none, 1 rooted(mask), 2 directed.
struct MRule {
    int kind = 0;
    std::uint32_t mask = 0;
};

MRule rule(std::uint32_t v, unsigned rank);

// one-layer section of w at vertex x (constant-rank bar rule throughout)
MWord section(const MWord& w, std::uint32_t x, unsigned rank);

// full-alphabet length of this representative: syllable count plus one for a
// nonzero translation
std::size_t syl_upper(const MWord& w);

// whether w's normal form is syntactically an alphabet letter or identity:
// purely rooted, or a single conjugated directed letter b^p
bool shape_in_ball1(const MWord& w);

// bridge to the general engine (level fixed, Kr spec implied by rank)
Word to_word(const MWord& w, unsigned level, unsigned rank);
MWord from_word(const Word& w, unsigned rank);

} // namespace smallrank
} // namespace branchwork
