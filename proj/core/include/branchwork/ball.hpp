#pragma once

#include <optional>
#include <vector>

#include "branchwork/engine.hpp"
#include "branchwork/order.hpp"

namespace branchwork {

struct BallElement {
    Word word;       // canonical representative: first discovered in BFS order
    unsigned length; // exact word length = BFS depth of first discovery
};

struct Ball {
    GenKind kind = GenKind::EStyle;
    unsigned radius = 0;
    std::vector<BallElement> elements;  // identity first, then BFS order
    std::vector<std::size_t> size_at;   // size_at[n] = |B(n)| for n <= radius
};

// Breadth-first closure under right multiplication by the generators.
// Deduplication buckets candidates by portrait fingerprint and confirms with
// exact equality; an Unknown comparison is a hard error, never a silent
// merge or split. Output is identical for every thread count: candidates are
// generated in a fixed order, workers only fill preallocated slots, and the
// merge is sequential.
Ball ball_enumerate(const Engine& eng, const GeneratingSet& gens, unsigned radius,
                    std::optional<unsigned> fingerprint_depth = std::nullopt,
                    unsigned threads = 1);

// Exact word length of target, or nullopt when it exceeds radius_limit.
// Agrees with the depth of first discovery in ball_enumerate.
std::optional<unsigned> min_length(const Engine& eng, const GeneratingSet& gens,
                                   const Word& target, unsigned radius_limit,
                                   std::optional<unsigned> fingerprint_depth = std::nullopt,
                                   unsigned threads = 1);

struct PeriodRow {
    unsigned n = 0;
    std::size_t ball_size = 0;
    unsigned pi_exponent = 0; // max order over the ball is 2^pi_exponent
    BigInt pi;                // the order itself
    Word witness;             // earliest ball element realizing pi
};

struct PeriodTable {
    GenKind kind = GenKind::EStyle;
    std::vector<PeriodRow> rows; // one per n in 0..n_max
};

// Maximum element order over each ball B(n), n <= n_max, with witnesses.
// Every order must come back Finite; a budget-limited order aborts the
// table (a non-finite order would falsify periodicity, so it must surface).
PeriodTable period_growth(const Engine& eng, const GeneratingSet& gens,
                          unsigned n_max,
                          std::optional<unsigned> fingerprint_depth = std::nullopt,
                          unsigned threads = 1, OrderCache* cache = nullptr);

} // namespace branchwork
