// Microbenchmarks for the hot paths: free-product normalization, one-layer
// sections, the word problem, order computation, ball growth and the
// mask-based constant-rank calculus. Inputs are seeded, so runs are
// comparable across machines and commits.

#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "branchwork/ball.hpp"
#include "branchwork/engine.hpp"
#include "branchwork/group.hpp"
#include "branchwork/order.hpp"
#include "branchwork/smallrank.hpp"
#include "branchwork/word.hpp"

namespace bw = branchwork;

namespace {

// alternating rooted/directed letters, rooted masks drawn uniformly
std::vector<bw::Letter> random_letters(std::mt19937& rng, unsigned rank,
                                       std::size_t count) {
    std::uniform_int_distribution<std::uint32_t> mask(0, (1u << rank) - 1);
    std::vector<bw::Letter> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (i % 2 == 0) {
            std::vector<bw::BigInt> support;
            std::uint32_t m = mask(rng);
            for (unsigned bit = 0; bit < rank; ++bit)
                if (m & (1u << bit))
                    support.emplace_back(bit);
            out.push_back(bw::Letter::make_rooted(
                bw::F2Vector::sparse(std::move(support))));
        } else {
            out.push_back(bw::Letter::make_directed());
        }
    }
    return out;
}

void bench_normalize(benchmark::State& state) {
    const unsigned rank = 5;
    std::mt19937 rng(7);
    std::vector<std::vector<bw::Letter>> inputs;
    for (int i = 0; i < 64; ++i)
        inputs.push_back(random_letters(rng, rank, 40));
    const bw::BigInt r(rank);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            bw::normalize(0, inputs[i % inputs.size()], r));
        ++i;
    }
}
BENCHMARK(bench_normalize);

void bench_section_one_layer(benchmark::State& state) {
    bw::Engine eng(bw::GroupSpec::kr(5));
    std::mt19937 rng(11);
    std::vector<bw::Word> words;
    for (int i = 0; i < 64; ++i)
        words.push_back(eng.make(0, random_letters(rng, 5, 12)));
    const bw::F2Vector zero = bw::F2Vector::sparse({});
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eng.section1(words[i % words.size()], zero));
        ++i;
    }
}
BENCHMARK(bench_section_one_layer);

void bench_is_trivial(benchmark::State& state) {
    bw::Engine eng(bw::GroupSpec::kr(3));
    std::mt19937 rng(13);
    std::vector<bw::Word> words;
    for (int i = 0; i < 32; ++i) {
        bw::Word w = eng.make(0, random_letters(rng, 3, 8));
        // commutators stabilize the first layer, which is the expensive path
        words.push_back(eng.comm(w, bw::Word::directed(0)));
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eng.is_trivial(words[i % words.size()]));
        ++i;
    }
}
BENCHMARK(bench_is_trivial);

void bench_order(benchmark::State& state) {
    bw::Engine eng(bw::GroupSpec::kr(5));
    std::mt19937 rng(17);
    std::vector<bw::Word> words;
    for (int i = 0; i < 32; ++i)
        words.push_back(eng.make(0, random_letters(rng, 5, 6)));
    std::size_t i = 0;
    for (auto _ : state) {
        // fresh cache per call: the steady-state cost is the interesting one
        benchmark::DoNotOptimize(bw::order(eng, words[i % words.size()]));
        ++i;
    }
}
BENCHMARK(bench_order);

void bench_ball_layer(benchmark::State& state) {
    bw::Engine eng(bw::GroupSpec::kr(3));
    bw::GeneratingSet gens =
        bw::make_generators(eng.group(), 0, bw::GenKind::EStyle);
    for (auto _ : state) {
        bw::Ball b = bw::ball_enumerate(eng, gens, 4);
        benchmark::DoNotOptimize(b.elements.size());
    }
}
BENCHMARK(bench_ball_layer);

void bench_smallrank_section(benchmark::State& state) {
    const unsigned rank = 5;
    std::mt19937 rng(19);
    std::uniform_int_distribution<std::uint32_t> mask(0, (1u << rank) - 1);
    std::vector<bw::smallrank::MWord> words;
    for (int i = 0; i < 256; ++i) {
        bw::smallrank::MBuilder b;
        for (int s = 0; s < 10; ++s) {
            b.push_rooted(mask(rng));
            b.push_b();
        }
        b.push_rooted(mask(rng));
        words.push_back(b.take());
    }
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& w = words[i % words.size()];
        benchmark::DoNotOptimize(
            bw::smallrank::section(w, mask(rng), rank));
        ++i;
    }
}
BENCHMARK(bench_smallrank_section);

} // namespace

BENCHMARK_MAIN();
