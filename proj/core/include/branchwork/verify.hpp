#pragma once

#include <optional>
#include <string>
#include <vector>

#include "branchwork/common.hpp"
#include "branchwork/engine.hpp"
#include "branchwork/group.hpp"
#include "branchwork/json_io.hpp"
#include "branchwork/word.hpp"

namespace branchwork {

// One inequality or table sweep. A report carries enough to rerun it: the
// check name, the parameter values it ran with (including which length mode
// each inequality family used, exact ball lookup or representative upper
// bound), how many concrete instances were confirmed, and on failure a
// counterexample whose words and vertices use the same JSON encoding the CLI
// accepts, so it can be replayed. No counterexample means the sweep passed.
struct CheckReport {
    std::string name;
    io::json parameters = io::json::object();
    std::size_t instances = 0;
    std::optional<io::json> counterexample;
    double elapsed_seconds = 0.0;

    bool passed() const { return !counterexample.has_value(); }
};

io::json check_report_json(const CheckReport& r);

// Layer-2 contraction in the constant-rank family: every g whose exact
// full-alphabet length is n <= radius has, at every layer-2 vertex, a section
// of exact length <= ceil(n/r). Sweeps conjugation-reduced representative
// forms over bit masks (every element of length <= radius is covered by one),
// certifying most sections structurally and deciding the rest against the
// explicit radius-1 ball with the engine as arbiter. Requires radius <= r,
// the regime where the bound says every section lands in the radius-1 ball;
// 2 <= r <= 30 (mask calculus).
CheckReport check_two_layer_reduction(unsigned r, unsigned radius,
                                      unsigned threads = 1,
                                      const Budgets& budgets = {});

// Growing-family contraction at the bottom of the tower, level 0: for every
// g of full-alphabet length <= radius,
//   sections of g      two layers down have length <= ceil(n/3),
//   sections of g^2    one layer down   have length <= n + 1,
//   sections of g^8  three layers down have length <= ceil(4n/3) + 1,
// with n the exact length of g (ball lookup). Section lengths are exact
// where the layer's alphabet is small enough to enumerate a ball (layers 1
// and 2) and representative upper bounds at layer 3, where an upper bound
// within the target already proves the inequality; a representative length
// above the target falls back to an exact lookup when the needed ball fits
// and is reported unresolved otherwise. Modes are recorded in the report.
CheckReport check_growing_reduction(unsigned f0, unsigned radius,
                                    unsigned threads = 1,
                                    const Budgets& budgets = {});

// The depth-10 contraction constant: 3*7*127 = 2667 > 2^10, and for sampled
// g of full-alphabet length <= 4 at level 0 of Growing(f0=3), syllable
// lengths along depth-10 section paths obey the chained per-layer bounds
// (ceil(n/3), ceil(n/7), ceil(n/127) across each rank step, one syllable of
// slack per odd layer crossing). Paths are drawn deterministically from the
// section probe points at each layer; the directed generator itself is swept
// as a distinguished case, every section along its cone staying at length
// <= 1.
CheckReport check_2667(unsigned seed = 1, const Budgets& budgets = {});

// Tower growth of the rank sequence: f(k) and f(k) - 1 dominate the height-k
// power tower of 2, exactly for k <= 3 and by tower-bracket comparison for
// k <= 6.
CheckReport check_tetration(const Budgets& budgets = {});

// Commutator section tables at constant rank r (r >= 6 needs five spare
// indices): first-layer sections of c_{i,j} = [b, e_i, e_j] match the
// four-case table over all 2^r vertices and index pairs; sections of
// [c_{i,j}, c_{m,n}^{bar e_k}] match the displayed case split; and the
// triple commutator [c_{i,j}, c_{m,n}^{bar e_k}, c_{i,j}^{bar e_l}] is
// active at the zero vertex alone, where its section is [b|_0, e_k, e_l].
// Mismatches are decided by equal(), syntactic agreement is the fast path.
CheckReport check_commutator_sections(unsigned r, unsigned threads = 1,
                                      const Budgets& budgets = {});

// Branching witnesses for either family: (a) the normal generators of the
// branching subgroup ([b,e_i,e_j] at constant rank, the double commutators
// [[d,a1],[d,a2]^g] of the growing family) are non-trivial; (b) every member
// of the next level's standard alphabet is realized as a first-layer section
// of the directed generator; (c) for the growing family, the double- and
// triple-commutator section tables hold at level 0, vertices handled
// sparsely or co-sparsely so rank 127 works.
CheckReport check_weakly_branch_generators(const GroupSpec& spec,
                                           const Budgets& budgets = {});

// Spherical transitivity: the orbit of the leftmost vertex under the
// generator actions is the whole layer, for each layer <= max_layer whose
// size is enumerable within budget.
CheckReport check_transitivity(const GroupSpec& spec, unsigned max_layer,
                               const Budgets& budgets = {});

// Minimal total generating length of a tuple on which the abstract word w is
// non-trivial. Letters of w are 1-based indices with sign for inversion
// (involutions make the sign moot here, but the evaluation honors it).
// Tuples are drawn from the ball of the given radius and scanned in
// lexicographic (total length, tuple) order; total_length is empty when no
// tuple within radius works. The witness holds the first tuple found.
struct ChiResult {
    std::optional<unsigned> total_length;
    std::vector<Word> witness;
    std::size_t tuples_scanned = 0;
};

ChiResult chi_complexity(const Engine& engine, const GeneratingSet& gens,
                         const std::vector<int>& abstract_word, unsigned radius,
                         unsigned threads = 1);

} // namespace branchwork
