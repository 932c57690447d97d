#pragma once

#include <optional>
#include <vector>

#include "branchwork/arith.hpp"
#include "branchwork/common.hpp"
#include "branchwork/f2vec.hpp"
#include "branchwork/tower.hpp"
#include "branchwork/word.hpp"

namespace branchwork {

enum class Family { Kr, Growing };

// Which group a word lives in. Kr acts on the constant-valency tree of rank
// r at every level; Growing has rank f(floor((base_index + level) / 3)) with
// f(0) = f0 and f(k+1) = 2^f(k) - 1.
struct GroupSpec {
    Family family = Family::Kr;
    unsigned r = 1;          // Kr only
    unsigned f0 = 3;         // Growing only
    unsigned base_index = 0; // Growing only

    static GroupSpec kr(unsigned r);
    static GroupSpec growing(unsigned f0, unsigned base_index = 0);

    TowerInt rank(unsigned level, const Budgets& budgets = {}) const;
    // Exact rank when it fits the bit budget, nullopt past that point.
    std::optional<BigInt> rank_exact(unsigned level, const Budgets& budgets = {}) const;
    // Rank as a machine integer; BudgetError when not exactly known or too
    // large to enumerate anything indexed by it.
    unsigned long rank_small(unsigned level, const Budgets& budgets = {}) const;

    // Growing levels with (base_index + level) = 2 mod 3 use the enumeration
    // section rule (every nonzero vertex active); everything else uses the
    // bar rule.
    bool uses_enumeration_rule(unsigned level) const;

    friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
        if (a.family != b.family)
            return false;
        if (a.family == Family::Kr)
            return a.r == b.r;
        return a.f0 == b.f0 && a.base_index == b.base_index;
    }
    friend bool operator!=(const GroupSpec& a, const GroupSpec& b) { return !(a == b); }
};

// Section of the level's directed generator at first-layer vertex x:
// nullopt for identity, a Directed letter (at level+1) when x is the zero
// vertex, or a Rooted letter otherwise per the family's rule.
//
// Bar rule: x = bar(e_i) maps to e_i, all other nonzero x are inactive.
// Rank-1 degenerate case: bar(e_0) coincides with the zero vertex, so the
// nonzero vertex takes the e_0 section instead (this is what keeps K_1
// infinite dihedral).
// Enumeration rule: nonzero x with enumeration index i maps to e_(i-1),
// which makes the nonzero vertices of one layer exactly exhaust the basis
// of the next (rank grows 2^r - 1).
std::optional<Letter> directed_section_rule(const GroupSpec& spec, unsigned level,
                                            const F2Vector& x,
                                            const Budgets& budgets = {});

// Binary enumeration of the rooted group: index i has the support of i's
// binary expansion, so index 0 is the identity. Cosparse vectors need an
// exact rank; indices beyond the bit budget raise BudgetError.
BigInt enumeration_index(const F2Vector& x, const std::optional<BigInt>& exact_rank,
                         const Budgets& budgets = {});
F2Vector enumeration_vector(const BigInt& i, const std::optional<BigInt>& exact_rank,
                            const Budgets& budgets = {});

enum class GenKind { EStyle, SStyle };

// E-style: basis e_0..e_(r-1) plus the directed generator (r+1 members).
// S-style: every rooted element plus every conjugate of the directed
// generator by a rooted element (2^(r+1) members, identity included).
struct GeneratingSet {
    GroupSpec spec;
    unsigned level = 0;
    GenKind kind = GenKind::EStyle;
    std::vector<Word> members;
};

GeneratingSet make_generators(const GroupSpec& spec, unsigned level, GenKind kind,
                              const Budgets& budgets = {});

} // namespace branchwork
