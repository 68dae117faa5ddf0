// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "typdec/context.hpp"
#include "typdec/core.hpp"

namespace typdec {

/// Raised by a provider that cannot score a particular candidate.
class ProviderError : public std::runtime_error {
public:
    ProviderError(TokenId token, const std::string& what) : std::runtime_error(what), token_(token) {}
    TokenId token() const noexcept { return token_; }

private:
    TokenId token_;
};

/// Semantic alignment of candidates with the running context. Batched so
/// implementations can build the context representation once per step.
/// Implementations must be safe for concurrent const use.
class AlignmentProvider {
public:
    virtual ~AlignmentProvider() = default;
    virtual std::vector<double> alignment(std::span<const TokenId> candidates,
                                          const GenerationContext& ctx) const = 0;
};

/// Task relevance of candidates.
class RelevanceProvider {
public:
    virtual ~RelevanceProvider() = default;
    virtual std::vector<double> relevance(std::span<const TokenId> candidates,
                                          const GenerationContext& ctx) const = 0;
};

/// Fixed per-token values; any other token is a ProviderError.
class FixedScores final : public AlignmentProvider, public RelevanceProvider {
public:
    explicit FixedScores(std::map<TokenId, double> values) : values_(std::move(values)) {}

    std::vector<double> alignment(std::span<const TokenId> candidates,
                                  const GenerationContext& ctx) const override {
        return lookup(candidates, ctx);
    }
    std::vector<double> relevance(std::span<const TokenId> candidates,
                                  const GenerationContext& ctx) const override {
        return lookup(candidates, ctx);
    }

private:
    std::vector<double> lookup(std::span<const TokenId> candidates, const GenerationContext&) const;
    std::map<TokenId, double> values_;
};

/// Relevance 0 for every token (ablation).
class ZeroRelevance final : public RelevanceProvider {
public:
    std::vector<double> relevance(std::span<const TokenId> candidates,
                                  const GenerationContext&) const override {
        return std::vector<double>(candidates.size(), 0.0);
    }
};

/// Fraction of a keyword set occurring (case-insensitively) inside the
/// candidate token's string.
class KeywordOverlapRelevance final : public RelevanceProvider {
public:
    KeywordOverlapRelevance(VocabPtr vocab, std::vector<std::string> keywords);

    std::vector<double> relevance(std::span<const TokenId> candidates,
                                  const GenerationContext& ctx) const override;

    double score(std::string_view token) const;

private:
    VocabPtr vocab_;
    std::vector<std::string> keywords_;  // lowercased, deduplicated
};

}  // namespace typdec
