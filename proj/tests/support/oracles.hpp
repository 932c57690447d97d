#pragma once

// Test-only reference implementations. Everything here is built straight
// from the defining recursions, shares no code paths with the library
// internals, and trades generality for checkability: small depths, dense
// permutation arrays, plain bigint loops.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "branchwork/engine.hpp"
#include "branchwork/group.hpp"

namespace testsupport {

using branchwork::BigInt;
using branchwork::Engine;
using branchwork::GroupSpec;
using branchwork::Letter;
using branchwork::Word;

// Models the level-0 group on the depth-D truncation of its tree. Every
// letter becomes an explicit permutation of the leaf set, so triviality,
// actions and sections can all be read off arrays. The constructor refuses
// trees with more than max_leaves leaves or with a level of rank > 20.
class DenseOracle {
public:
    DenseOracle(const GroupSpec& spec, unsigned depth, std::size_t max_leaves = 4096);

    unsigned depth() const { return depth_; }
    std::size_t leaves() const { return leaves_; }
    const std::vector<unsigned>& ranks() const { return ranks_; }

    // Permutations act on leaf indices; words compose letter permutations
    // left to right, matching an action written on the right.
    std::vector<std::uint32_t> letter_perm(const Letter& l) const;
    std::vector<std::uint32_t> word_perm(const Word& w) const;

    bool is_identity(const std::vector<std::uint32_t>& p) const;

    // Leaf index <-> digit string, one digit per level, digit l in
    // [0, 2^rank(l)). Digits encode vertices as bitmasks over the basis.
    std::vector<std::uint32_t> decode(std::uint32_t leaf) const;
    std::uint32_t encode(const std::vector<std::uint32_t>& digits) const;

    // The permutation a word induces on the subtree hanging below the
    // first-layer vertex x, extracted from the word's own permutation.
    // Defined only when the word fixes x; returns nullopt otherwise.
    std::optional<std::vector<std::uint32_t>> subtree_perm(
        const std::vector<std::uint32_t>& word_p, std::uint32_t x) const;

    // Convenience: the oracle for the same family one level down, suitable
    // for turning a first-layer section word into a permutation comparable
    // with subtree_perm output.
    DenseOracle child() const;

private:
    GroupSpec spec_;
    unsigned depth_;
    std::size_t leaves_ = 1;
    std::vector<unsigned> ranks_;
    std::vector<std::size_t> strides_;

    void apply_directed(unsigned pos, std::vector<std::uint32_t>& digits) const;
};

// Smallest e with w^(2^e) trivial, found by repeated squaring and the
// engine's word problem only. Independent of the order routine's recursion.
// Returns nullopt if no power up to 2^cap is trivial.
std::optional<unsigned> doubling_order_exp(const Engine& eng, const Word& w, unsigned cap);

// Uniformly mixed word over the level-0 basis letters and the directed
// generator, normalized by the engine. Length before normalization is
// uniform in [0, max_letters].
Word random_word(const Engine& eng, std::mt19937& rng, unsigned max_letters);

// Rank recurrence f(k+1) = 2^f(k) - 1 and the tower tetr(b, n+1) = b^tetr(b, n),
// evaluated as plain bigint loops. Callers keep k and n small enough that the
// results stay exact.
BigInt f_recurrence(unsigned f0, unsigned k);
BigInt tetr_recurrence(unsigned base, unsigned n);

} // namespace testsupport
