// Microbenchmarks comparing the blockwise kernels (serial and OpenMP) with
// the position-at-a-time reference implementations, and the match
// strategies with naive scanning. Outputs are cross-checked once at start;
// the run aborts if any kernel disagrees.

#include <benchmark/benchmark.h>

#include <iostream>
#include <map>
#include <random>
#include <string>

#include "cmm/codebook.hpp"
#include "cmm/encoding.hpp"
#include "cmm/match.hpp"

using namespace cmm;

namespace {

const Codebook& dna() {
    static const Codebook cb = build_codebook("ATGC");
    return cb;
}

const ReferenceMatrix& refmat() {
    static const ReferenceMatrix d = build_reference_matrix(dna());
    return d;
}

const std::string& genome(std::size_t n) {
    static std::map<std::size_t, std::string> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::mt19937 rng(static_cast<std::uint32_t>(0xb10c + n));
        static const std::string pool = "ACGT";
        std::string text(n, 'A');
        for (auto& c : text) c = pool[rng() % 4];
        it = cache.emplace(n, std::move(text)).first;
    }
    return it->second;
}

const SymbolIndexSets& genome_sets(std::size_t n) {
    static std::map<std::size_t, SymbolIndexSets> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache
                 .emplace(n, extract_index_sets(
                                 transform(encode_sequence(genome(n), dna()), refmat())))
                 .first;
    return it->second;
}

constexpr const char* kPattern = "CAG";

bool verify_kernels() {
    const auto& text = genome(std::size_t{1} << 18);
    const auto want_input = ref::encode_sequence(text, dna());
    if (encode_sequence(text, dna(), UnknownPolicy::kZeroColumn, Execution::kSerial) !=
            want_input ||
        encode_sequence(text, dna(), UnknownPolicy::kZeroColumn, Execution::kParallel) !=
            want_input)
        return false;
    const auto want_inc = ref::transform(want_input, refmat());
    if (transform(want_input, refmat(), Execution::kSerial) != want_inc ||
        transform(want_input, refmat(), Execution::kParallel) != want_inc)
        return false;

    const auto want = naive_search(text, kPattern).starts;
    const auto pattern_sets =
        extract_index_sets(transform(encode_sequence(kPattern, dna()), refmat()));
    const auto& text_sets = genome_sets(std::size_t{1} << 18);
    for (const auto strat : {MatchStrategy::kSortedMerge, MatchStrategy::kSortedMergeRarest,
                             MatchStrategy::kBitBlock})
        if (locate(pattern_sets, text_sets, 3, strat).starts != want) return false;
    return true;
}

void BM_EncodeReference(benchmark::State& state) {
    const auto& text = genome(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto m = ref::encode_sequence(text, dna());
        benchmark::DoNotOptimize(m);
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}

void BM_EncodeBlockSerial(benchmark::State& state) {
    const auto& text = genome(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto m = encode_sequence(text, dna(), UnknownPolicy::kZeroColumn, Execution::kSerial);
        benchmark::DoNotOptimize(m);
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}

void BM_EncodeBlockParallel(benchmark::State& state) {
    const auto& text = genome(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto m = encode_sequence(text, dna(), UnknownPolicy::kZeroColumn, Execution::kParallel);
        benchmark::DoNotOptimize(m);
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}

void BM_TransformReference(benchmark::State& state) {
    const auto input = encode_sequence(genome(static_cast<std::size_t>(state.range(0))), dna());
    for (auto _ : state) {
        auto o = ref::transform(input, refmat());
        benchmark::DoNotOptimize(o);
    }
}

void BM_TransformBlockSerial(benchmark::State& state) {
    const auto input = encode_sequence(genome(static_cast<std::size_t>(state.range(0))), dna());
    for (auto _ : state) {
        auto o = transform(input, refmat(), Execution::kSerial);
        benchmark::DoNotOptimize(o);
    }
}

void BM_TransformBlockParallel(benchmark::State& state) {
    const auto input = encode_sequence(genome(static_cast<std::size_t>(state.range(0))), dna());
    for (auto _ : state) {
        auto o = transform(input, refmat(), Execution::kParallel);
        benchmark::DoNotOptimize(o);
    }
}

void locate_benchmark(benchmark::State& state, MatchStrategy strat, Execution exec) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto& text_sets = genome_sets(n);
    const auto pattern_sets =
        extract_index_sets(transform(encode_sequence(kPattern, dna()), refmat()));
    for (auto _ : state) {
        auto occ = locate(pattern_sets, text_sets, 3, strat, exec);
        benchmark::DoNotOptimize(occ);
    }
}

void BM_LocateSortedMerge(benchmark::State& state) {
    locate_benchmark(state, MatchStrategy::kSortedMerge, Execution::kSerial);
}

void BM_LocateSortedMergeRarest(benchmark::State& state) {
    locate_benchmark(state, MatchStrategy::kSortedMergeRarest, Execution::kSerial);
}

void BM_LocateBitBlockSerial(benchmark::State& state) {
    locate_benchmark(state, MatchStrategy::kBitBlock, Execution::kSerial);
}

void BM_LocateBitBlockParallel(benchmark::State& state) {
    locate_benchmark(state, MatchStrategy::kBitBlock, Execution::kParallel);
}

void BM_LocateNaive(benchmark::State& state) {
    const auto& text = genome(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto occ = naive_search(text, kPattern);
        benchmark::DoNotOptimize(occ);
    }
}

BENCHMARK(BM_EncodeReference)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_EncodeBlockSerial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_EncodeBlockParallel)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_TransformReference)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_TransformBlockSerial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_TransformBlockParallel)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_LocateSortedMerge)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_LocateSortedMergeRarest)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_LocateBitBlockSerial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_LocateBitBlockParallel)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_LocateNaive)->Arg(1 << 16)->Arg(1 << 20);

}  // namespace

int main(int argc, char** argv) {
    if (!verify_kernels()) {
        std::cerr << "kernel outputs disagree; refusing to benchmark\n";
        return 1;
    }
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
