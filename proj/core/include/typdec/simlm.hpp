// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "typdec/context.hpp"
#include "typdec/core.hpp"
#include "typdec/sampler.hpp"

namespace typdec {

enum class LmKind { peaked, flat, mixed, loop_prone };

/// Throws std::invalid_argument for unknown names.
LmKind parse_lm_kind(std::string_view name);
std::string_view to_string(LmKind kind);

struct LmProfile {
    LmKind kind = LmKind::peaked;
    double base_temperature = 1.0;
    /// Score multiplier for tokens seen in the trailing window (loop_prone).
    double loop_gamma = 1.0;
    /// Context order of the hash and width of the loop boost window.
    std::size_t recency_window = 4;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Source of next-token distributions for the decode loop.
class LanguageModel {
public:
    virtual ~LanguageModel() = default;
    virtual const VocabPtr& vocab() const noexcept = 0;
    virtual TokenDistribution next_distribution(std::span<const TokenId> history) const = 0;

    double probability(std::span<const TokenId> prefix, TokenId next) const {
        return next_distribution(prefix)[next];
    }
};

/// The same distribution at every step.
class FixedDistributionModel final : public LanguageModel {
public:
    explicit FixedDistributionModel(TokenDistribution dist) : dist_(std::move(dist)) {}
    const VocabPtr& vocab() const noexcept override { return dist_.vocab_ptr(); }
    TokenDistribution next_distribution(std::span<const TokenId>) const override { return dist_; }

private:
    TokenDistribution dist_;
};

/// Small-order stochastic source over a fixed vocabulary.
///
/// Each step hashes (seed, last recency_window tokens) into a positive score
/// per token. The kind shapes the scores:
///   flat        0.5 + 0.5u
///   peaked      0.05 + 4u^6
///   mixed       peaked or flat, chosen by one bit of the context hash
///   loop_prone  peaked, with scores of recently seen tokens times loop_gamma
/// where u in [0, 1) is the per-token hash. The distribution is the softmax
/// of score / base_temperature.
class SyntheticLm final : public LanguageModel {
public:
    SyntheticLm(LmProfile profile, VocabPtr vocab);

    TokenDistribution next_distribution(std::span<const TokenId> history) const override;
    TokenDistribution next_distribution(const GenerationContext& ctx) const {
        return next_distribution(ctx.history());
    }

    const LmProfile& profile() const noexcept { return profile_; }
    const VocabPtr& vocab() const noexcept override { return vocab_; }

private:
    LmProfile profile_;
    VocabPtr vocab_;
};

struct GenerationResult {
    std::vector<TokenId> tokens;  // generated tokens only, prompt excluded
    std::vector<double> entropy_trace;
};

/// Runs the decode loop for one sequence: distribution from the model,
/// token from the sampler, token back into the context.
GenerationResult generate(const LanguageModel& lm, Sampler& sampler, std::uint64_t seed,
                          std::size_t max_tokens, std::span<const TokenId> prompt = {},
                          std::size_t entropy_window = 8);

}  // namespace typdec
