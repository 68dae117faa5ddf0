// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "typdec/sampler.hpp"

namespace typdec {

TokenId GreedySampler::step(const TokenDistribution& dist, GenerationContext& ctx, Rng&) {
    const TokenId t = greedy_step(dist);
    ctx.record(t, entropy(dist));
    return t;
}

TokenId TopKSampler::step(const TokenDistribution& dist, GenerationContext& ctx, Rng& rng) {
    const TokenId t = topk_step(dist, k_, rng);
    ctx.record(t, entropy(dist));
    return t;
}

TokenId NucleusSampler::step(const TokenDistribution& dist, GenerationContext& ctx, Rng& rng) {
    const TokenId t = nucleus_step(dist, p_, rng);
    ctx.record(t, entropy(dist));
    return t;
}

TokenId MirostatSampler::step(const TokenDistribution& dist, GenerationContext& ctx, Rng& rng) {
    auto draw = mirostat_step(dist, state_, rng);
    state_ = draw.state;
    ctx.record(draw.token, entropy(dist));
    return draw.token;
}

TokenId LtsSampler::step(const TokenDistribution& dist, GenerationContext& ctx, Rng& rng) {
    const TokenId t = lts_step(dist, cfg_, rng).token;
    ctx.record(t, entropy(dist));
    return t;
}

AstsSampler::AstsSampler(AstsConfig cfg, std::shared_ptr<const AlignmentProvider> align,
                         std::shared_ptr<const RelevanceProvider> relevance, Observer observer)
    : cfg_(cfg), align_(std::move(align)), relevance_(std::move(relevance)), observer_(std::move(observer)) {
    cfg_.validate();
}

TokenId AstsSampler::step(const TokenDistribution& dist, GenerationContext& ctx, Rng& rng) {
    auto draw = asts_step(dist, ctx, cfg_, *align_, *relevance_, rng);
    if (observer_) observer_(draw.breakdown);
    return draw.token;
}

}  // namespace typdec
