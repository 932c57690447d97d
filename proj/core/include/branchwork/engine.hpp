#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "branchwork/common.hpp"
#include "branchwork/f2vec.hpp"
#include "branchwork/group.hpp"
#include "branchwork/word.hpp"

namespace branchwork {

// Vertex of the tree as a path of first-layer choices; parts[i] is valid for
// rank(start_level + i). Empty path is the root of the subtree at
// start_level.
struct VertexPath {
    unsigned start_level = 0;
    std::vector<F2Vector> parts;

    static VertexPath root(unsigned level) { return VertexPath{level, {}}; }
    static VertexPath single(unsigned level, F2Vector x) {
        return VertexPath{level, {std::move(x)}};
    }
};

// Superset of the first-layer vertices where a word can have a non-identity
// section. points are explicit vertices; each entry b of bar_families stands
// for the family {b + bar(e_j) : j in [0, rank)}; whole_layer marks levels
// whose directed rule activates every nonzero vertex.
struct ActiveSet {
    bool whole_layer = false;
    std::vector<F2Vector> points;
    std::vector<F2Vector> bar_families;
};

// Where the word problem and order computation look below the first layer.
// points lists every vertex whose section can differ from a single basis
// letter pattern; parity_witness true means some class of directed letters
// has odd multiplicity, so vertices outside points carry sections that are
// single nonzero rooted elements somewhere (order exactly 2), certifying
// non-triviality without enumeration. With parity_witness false, sections
// away from points are the identity.
struct SectionProbe {
    bool parity_witness = false;
    std::vector<F2Vector> points;
};

// Sparse truncated portrait: first-layer translation plus children at active
// vertices whose section has a nonempty normal form. Children sorted by
// vertex for deterministic serialization; used as a deduplication
// fingerprint, with exact equality always re-established by equal().
struct Portrait {
    F2Vector translation;
    std::vector<std::pair<F2Vector, Portrait>> children;

    friend bool operator==(const Portrait& a, const Portrait& b) {
        return a.translation == b.translation && a.children == b.children;
    }
    friend bool operator!=(const Portrait& a, const Portrait& b) { return !(a == b); }
};

std::string portrait_key(const Portrait& p);

// Word calculus for one group: actions, sections, the word problem, and the
// portrait machinery. Immutable after construction apart from memo tables,
// which are mutex-guarded and cache only definite answers, so concurrent use
// is deterministic.
class Engine {
public:
    explicit Engine(GroupSpec spec, Budgets budgets = {});

    const GroupSpec& group() const { return spec_; }
    const Budgets& budgets() const { return budgets_; }

    std::optional<BigInt> rank_exact(unsigned level) const;

    // normalize with the level's rank applied to every vector
    Word make(unsigned level, const std::vector<Letter>& letters) const;
    Word mul(const Word& a, const Word& b) const;
    Word conj(const Word& w, const Word& by) const;
    Word comm(const Word& x, const Word& y) const;
    Word pow(const Word& w, unsigned long e) const;

    F2Vector first_layer_translation(const Word& w) const;
    VertexPath act(const Word& w, const VertexPath& v) const;
    Word section(const Word& w, const VertexPath& v) const;
    // single-layer convenience
    Word section1(const Word& w, const F2Vector& x) const;

    ActiveSet active_vertices(const Word& w) const;
    // explicit expansion of active_vertices; BudgetError when a family or a
    // whole layer cannot be enumerated within the vertex budget
    std::vector<F2Vector> active_explicit(const Word& w) const;

    // Probe set for recursing below the first layer of a word whose folded
    // translation is zero. BudgetError when the set cannot be pinned down
    // within the vertex budget (tiny-rank degenerate cases only).
    SectionProbe section_probe(const Word& w) const;

    // Word problem. False always carries an implicit witness (a moved
    // vertex found during the search); True means every section chain ends
    // in the identity; Unknown only on recursion budget exhaustion.
    TriState is_trivial(const Word& w) const;
    // Same question on the depth-truncated tree (depth 0 tree is a point).
    TriState is_trivial_truncated(const Word& w, unsigned depth) const;
    TriState equal(const Word& a, const Word& b) const;

    Portrait portrait(const Word& w, unsigned depth) const;
    std::string fingerprint(const Word& w, unsigned depth) const;

    // Letter count of the conjugated-syllable rewriting: one per directed
    // letter plus one when the folded translation is nonzero. Upper bound on
    // the generating-set length over the full alphabet.
    std::size_t syllable_length_upper(const Word& w) const;

private:
    Word section_letters(const Word& w, const std::vector<F2Vector>& parts) const;
    std::vector<F2Vector> act_parts(const Letter& l, unsigned level,
                                    std::vector<F2Vector> parts, std::size_t at) const;
    std::string memo_key(const Word& w) const;

    // prefix classes: distinct accumulated rooted prefixes before directed
    // letters, with multiplicity
    std::vector<std::pair<F2Vector, std::size_t>> prefix_classes(const Word& w) const;

    TriState is_trivial_rec(const Word& w, unsigned depth_left,
                            std::vector<std::pair<std::string, std::size_t>>& path,
                            std::size_t& low) const;
    TriState is_trivial_trunc_rec(const Word& w, unsigned depth) const;

    GroupSpec spec_;
    Budgets budgets_;
    mutable std::mutex memo_mu_;
    mutable std::unordered_map<std::string, bool> triv_memo_;
    mutable std::unordered_map<std::string, bool> trunc_memo_;
};

} // namespace branchwork
