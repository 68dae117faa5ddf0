// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "typdec/typdec.hpp"

using namespace typdec;

namespace {

TokenDistribution model_step(std::size_t vocab_size) {
    LmProfile profile;
    profile.kind = LmKind::peaked;
    SyntheticLm lm(profile, Vocabulary::numbered(vocab_size));
    const std::vector<TokenId> history{1, 2, 3};
    return lm.next_distribution(history);
}

void BM_Entropy(benchmark::State& state) {
    const auto dist = model_step(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(entropy(dist));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Entropy)->RangeMultiplier(4)->Range(64, 65536);

void BM_SyntheticLmStep(benchmark::State& state) {
    SyntheticLm lm(LmProfile{}, Vocabulary::numbered(static_cast<std::size_t>(state.range(0))));
    const std::vector<TokenId> history{5, 9, 2, 7};
    for (auto _ : state) benchmark::DoNotOptimize(lm.next_distribution(history));
}
BENCHMARK(BM_SyntheticLmStep)->RangeMultiplier(4)->Range(64, 16384);

void BM_TypicalSetMass(benchmark::State& state) {
    const auto dist = model_step(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(typical_set_mass(dist, 0.9));
}
BENCHMARK(BM_TypicalSetMass)->RangeMultiplier(4)->Range(64, 65536);

void BM_NucleusStep(benchmark::State& state) {
    const auto dist = model_step(static_cast<std::size_t>(state.range(0)));
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(nucleus_step(dist, 0.9, rng));
}
BENCHMARK(BM_NucleusStep)->RangeMultiplier(4)->Range(64, 65536);

void BM_AstsStep(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto dist = model_step(n);
    auto table = std::make_shared<const EmbeddingTable>(synthetic_table(dist.vocab(), 16, 0));
    EmbeddingAlignment align(dist.vocab_ptr(), table, {});
    ZeroRelevance relevance;
    AstsConfig cfg;
    Rng rng(1);
    GenerationContext base(cfg.window_w);
    for (TokenId t = 0; t < 64; ++t) base.record(t % static_cast<TokenId>(n), 3.0 + 0.01 * t);
    for (auto _ : state) {
        GenerationContext ctx = base;
        benchmark::DoNotOptimize(asts_step(dist, ctx, cfg, align, relevance, rng));
    }
}
BENCHMARK(BM_AstsStep)->RangeMultiplier(4)->Range(64, 16384);

void BM_Generate200(benchmark::State& state) {
    LmProfile profile;
    profile.kind = LmKind::loop_prone;
    profile.loop_gamma = 3.0;
    SyntheticLm lm(profile, Vocabulary::numbered(256));
    auto table = std::make_shared<const EmbeddingTable>(synthetic_table(*lm.vocab(), 16, 0));
    auto align = std::make_shared<EmbeddingAlignment>(lm.vocab(), table, PoolingOptions{});
    auto relevance = std::make_shared<ZeroRelevance>();
    std::uint64_t seed = 0;
    for (auto _ : state) {
        std::unique_ptr<Sampler> sampler;
        if (state.range(0) == 0) {
            sampler = std::make_unique<LtsSampler>(LtsConfig{});
        } else {
            sampler = std::make_unique<AstsSampler>(AstsConfig{}, align, relevance);
        }
        benchmark::DoNotOptimize(generate(lm, *sampler, seed++, 200));
    }
    state.SetLabel(state.range(0) == 0 ? "lts" : "asts");
}
BENCHMARK(BM_Generate200)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Rep32(benchmark::State& state) {
    Rng rng(2);
    std::vector<TokenId> seq(static_cast<std::size_t>(state.range(0)));
    for (auto& t : seq) t = static_cast<TokenId>(rng.next_u64() % 64);
    for (auto _ : state) benchmark::DoNotOptimize(rep_l(seq, 32));
}
BENCHMARK(BM_Rep32)->RangeMultiplier(8)->Range(64, 32768);

void BM_NgramDiversity(benchmark::State& state) {
    Rng rng(3);
    std::vector<TokenId> seq(static_cast<std::size_t>(state.range(0)));
    for (auto& t : seq) t = static_cast<TokenId>(rng.next_u64() % 64);
    for (auto _ : state) benchmark::DoNotOptimize(ngram_diversity(seq));
}
BENCHMARK(BM_NgramDiversity)->RangeMultiplier(8)->Range(64, 32768);

}  // namespace

BENCHMARK_MAIN();
