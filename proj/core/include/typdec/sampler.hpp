// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>

#include "typdec/asts.hpp"
#include "typdec/baselines.hpp"
#include "typdec/context.hpp"
#include "typdec/core.hpp"
#include "typdec/lts.hpp"

namespace typdec {

/// One decoding strategy. `step` draws the next token and records it (and
/// the step entropy) in `ctx`. Instances may carry per-sequence state, so
/// use one instance per sequence.
class Sampler {
public:
    virtual ~Sampler() = default;
    virtual TokenId step(const TokenDistribution& dist, GenerationContext& ctx, Rng& rng) = 0;
};

using SamplerFactory = std::function<std::unique_ptr<Sampler>()>;

class GreedySampler final : public Sampler {
public:
    TokenId step(const TokenDistribution& dist, GenerationContext& ctx, Rng& rng) override;
};

class TopKSampler final : public Sampler {
public:
    explicit TopKSampler(std::size_t k) : k_(k) {}
    TokenId step(const TokenDistribution& dist, GenerationContext& ctx, Rng& rng) override;

private:
    std::size_t k_;
};

class NucleusSampler final : public Sampler {
public:
    explicit NucleusSampler(double p) : p_(p) {}
    TokenId step(const TokenDistribution& dist, GenerationContext& ctx, Rng& rng) override;

private:
    double p_;
};

class MirostatSampler final : public Sampler {
public:
    explicit MirostatSampler(MirostatState initial) : state_(initial) {}
    TokenId step(const TokenDistribution& dist, GenerationContext& ctx, Rng& rng) override;
    const MirostatState& state() const noexcept { return state_; }

private:
    MirostatState state_;
};

class LtsSampler final : public Sampler {
public:
    explicit LtsSampler(LtsConfig cfg) : cfg_(cfg) {}
    TokenId step(const TokenDistribution& dist, GenerationContext& ctx, Rng& rng) override;

private:
    LtsConfig cfg_;
};

class AstsSampler final : public Sampler {
public:
    using Observer = std::function<void(const ScoreBreakdown&)>;

    AstsSampler(AstsConfig cfg, std::shared_ptr<const AlignmentProvider> align,
                std::shared_ptr<const RelevanceProvider> relevance, Observer observer = {});
    TokenId step(const TokenDistribution& dist, GenerationContext& ctx, Rng& rng) override;

private:
    AstsConfig cfg_;
    std::shared_ptr<const AlignmentProvider> align_;
    std::shared_ptr<const RelevanceProvider> relevance_;
    Observer observer_;
};

}  // namespace typdec
