#include "branchwork/ball.hpp"

#include <string>
#include <unordered_map>
#include <utility>

#include "branchwork/parallel.hpp"

namespace branchwork {

namespace {

// fingerprint buckets over the elements discovered so far
using Buckets = std::unordered_map<std::string, std::vector<std::size_t>>;

// exact membership check against one bucket; Unknown comparisons are fatal
// because both merging and splitting would corrupt the ball
std::optional<std::size_t> find_in_bucket(const Engine& eng,
                                          const std::vector<BallElement>& elements,
                                          const std::vector<std::size_t>& bucket,
                                          const Word& w) {
    for (std::size_t idx : bucket) {
        TriState ts = eng.equal(w, elements[idx].word);
        if (ts == TriState::True)
            return idx;
        if (ts == TriState::Unknown)
            throw BudgetError("ball dedup: equality undecidable within budgets");
    }
    return std::nullopt;
}

struct Candidate {
    Word word;
    std::string fp;
};

// one BFS layer: products of the frontier with every generator, in a fixed
// order, fingerprints computed in parallel
std::vector<Candidate> expand_layer(const Engine& eng, const GeneratingSet& gens,
                                    const std::vector<BallElement>& elements,
                                    std::size_t frontier_begin,
                                    std::size_t frontier_end, unsigned fdepth,
                                    unsigned threads) {
    const std::size_t gcount = gens.members.size();
    const std::size_t n = (frontier_end - frontier_begin) * gcount;
    return parallel_map<Candidate>(n, threads, [&](std::size_t c) {
        const std::size_t i = frontier_begin + c / gcount;
        const std::size_t g = c % gcount;
        Candidate cand;
        cand.word = eng.mul(elements[i].word, gens.members[g]);
        cand.fp = eng.fingerprint(cand.word, fdepth);
        return cand;
    });
}

} // namespace

Ball ball_enumerate(const Engine& eng, const GeneratingSet& gens, unsigned radius,
                    std::optional<unsigned> fingerprint_depth, unsigned threads) {
    const unsigned fdepth =
        fingerprint_depth.value_or(eng.budgets().fingerprint_depth);

    Ball ball;
    ball.kind = gens.kind;
    ball.radius = radius;
    ball.elements.push_back({Word::identity(gens.level), 0});
    ball.size_at.assign(1, 1);

    Buckets buckets;
    buckets[eng.fingerprint(ball.elements[0].word, fdepth)].push_back(0);

    std::size_t frontier_begin = 0;
    std::size_t frontier_end = 1;
    for (unsigned depth = 1; depth <= radius; ++depth) {
        if (frontier_begin == frontier_end) {
            // the group closed up below the radius; deeper balls repeat
            ball.size_at.push_back(ball.elements.size());
            continue;
        }
        auto layer = expand_layer(eng, gens, ball.elements, frontier_begin,
                                  frontier_end, fdepth, threads);
        for (auto& cand : layer) {
            auto& bucket = buckets[cand.fp];
            if (find_in_bucket(eng, ball.elements, bucket, cand.word))
                continue;
            if (ball.elements.size() >= eng.budgets().ball_size)
                throw BudgetError("ball exceeds the element budget");
            bucket.push_back(ball.elements.size());
            ball.elements.push_back({std::move(cand.word), depth});
        }
        ball.size_at.push_back(ball.elements.size());
        frontier_begin = frontier_end;
        frontier_end = ball.elements.size();
    }
    return ball;
}

std::optional<unsigned> min_length(const Engine& eng, const GeneratingSet& gens,
                                   const Word& target, unsigned radius_limit,
                                   std::optional<unsigned> fingerprint_depth,
                                   unsigned threads) {
    if (target.level != gens.level)
        throw DomainError("min_length: target level does not match generators");
    const unsigned fdepth =
        fingerprint_depth.value_or(eng.budgets().fingerprint_depth);

    TriState triv = eng.is_trivial(target);
    if (triv == TriState::Unknown)
        throw BudgetError("min_length: target comparison undecidable");
    if (triv == TriState::True)
        return 0;
    const std::string target_fp = eng.fingerprint(target, fdepth);

    std::vector<BallElement> elements{{Word::identity(gens.level), 0}};
    Buckets buckets;
    buckets[eng.fingerprint(elements[0].word, fdepth)].push_back(0);

    std::size_t frontier_begin = 0;
    std::size_t frontier_end = 1;
    for (unsigned depth = 1; depth <= radius_limit; ++depth) {
        if (frontier_begin == frontier_end)
            return std::nullopt; // group exhausted without meeting the target
        auto layer = expand_layer(eng, gens, elements, frontier_begin,
                                  frontier_end, fdepth, threads);
        for (auto& cand : layer) {
            auto& bucket = buckets[cand.fp];
            if (find_in_bucket(eng, elements, bucket, cand.word))
                continue;
            if (cand.fp == target_fp) {
                TriState ts = eng.equal(cand.word, target);
                if (ts == TriState::Unknown)
                    throw BudgetError("min_length: equality undecidable");
                if (ts == TriState::True)
                    return depth;
            }
            if (elements.size() >= eng.budgets().ball_size)
                throw BudgetError("ball exceeds the element budget");
            bucket.push_back(elements.size());
            elements.push_back({std::move(cand.word), depth});
        }
        frontier_begin = frontier_end;
        frontier_end = elements.size();
    }
    return std::nullopt;
}

PeriodTable period_growth(const Engine& eng, const GeneratingSet& gens,
                          unsigned n_max,
                          std::optional<unsigned> fingerprint_depth,
                          unsigned threads, OrderCache* cache) {
    Ball ball = ball_enumerate(eng, gens, n_max, fingerprint_depth, threads);

    OrderCache local;
    OrderCache* use = cache != nullptr ? cache : &local;
    auto orders = parallel_map<OrderResult>(
        ball.elements.size(), threads,
        [&](std::size_t i) { return order(eng, ball.elements[i].word, use); });

    PeriodTable table;
    table.kind = ball.kind;
    unsigned best = 0;
    std::size_t best_idx = 0;
    std::size_t next = 0;
    for (unsigned n = 0; n <= n_max; ++n) {
        while (next < ball.elements.size() && ball.elements[next].length <= n) {
            const OrderResult& r = orders[next];
            if (!r.finite())
                throw BudgetError(
                    "period table: an order computation exceeded its budget");
            if (r.exponent > best) {
                best = r.exponent;
                best_idx = next;
            }
            ++next;
        }
        PeriodRow row;
        row.n = n;
        row.ball_size = ball.size_at[n];
        row.pi_exponent = best;
        row.pi = BigInt(1) << best;
        row.witness = ball.elements[best_idx].word;
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace branchwork
