// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "typdec/rng.hpp"

namespace typdec {

using TokenId = std::uint32_t;

/// Tolerance on the total mass of a TokenDistribution.
inline constexpr double kMassTolerance = 1e-9;

/// Probabilities below this floor contribute nothing to entropy sums.
inline constexpr double kProbFloor = 1e-12;

/// Ordered token strings with dense ids 0..size()-1.
class Vocabulary {
public:
    /// Throws std::invalid_argument on an empty list or duplicate strings.
    explicit Vocabulary(std::vector<std::string> tokens);

    /// "<prefix>0", "<prefix>1", ... "<prefix>{n-1}".
    static std::shared_ptr<const Vocabulary> numbered(std::size_t n, std::string_view prefix = "tok");

    std::size_t size() const noexcept { return tokens_.size(); }
    const std::string& token(TokenId id) const;
    std::optional<TokenId> find(std::string_view token) const;
    /// Like find() but throws std::out_of_range naming the token.
    TokenId id(std::string_view token) const;
    const std::vector<std::string>& tokens() const noexcept { return tokens_; }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, TokenId> index_;
};

using VocabPtr = std::shared_ptr<const Vocabulary>;

/// Probability mass over a vocabulary at one decoding step. Immutable once
/// built; entries are nonnegative and sum to 1 within kMassTolerance.
class TokenDistribution {
public:
    /// Validates length, sign, finiteness and total mass; throws
    /// std::invalid_argument otherwise.
    TokenDistribution(VocabPtr vocab, std::vector<double> probs);

    /// Softmax of raw logits.
    static TokenDistribution from_logits(VocabPtr vocab, std::span<const double> logits);

    static TokenDistribution one_hot(VocabPtr vocab, TokenId id);
    static TokenDistribution uniform(VocabPtr vocab);

    const Vocabulary& vocab() const noexcept { return *vocab_; }
    const VocabPtr& vocab_ptr() const noexcept { return vocab_; }
    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](TokenId id) const { return probs_.at(id); }
    std::span<const double> probs() const noexcept { return probs_; }

    /// Token ids with strictly positive mass, ascending.
    std::vector<TokenId> support() const;

private:
    VocabPtr vocab_;
    std::vector<double> probs_;
};

/// Shannon entropy in nats; 0 * ln 0 is taken as 0.
double entropy(const TokenDistribution& dist);

/// -ln p(token). Throws std::domain_error("infinite surprisal") when p = 0.
double surprisal(const TokenDistribution& dist, TokenId token);

/// Renormalizes `weights` (indexed by token id, length |V|) over `support`.
/// Ids outside the support get 0. Throws std::domain_error("empty mass")
/// when the support carries no positive weight.
TokenDistribution normalize(VocabPtr vocab, std::span<const double> weights,
                            std::span<const TokenId> support);

/// p_i^(1/T) renormalized over `support`. Evaluated in the log domain so
/// very small temperatures do not underflow. Throws std::invalid_argument
/// ("invalid temperature") for T <= 0 or non-finite T.
TokenDistribution temperature_scale(const TokenDistribution& dist, double temperature,
                                    std::span<const TokenId> support);

/// Categorical draw. Consumes exactly one value from `rng`.
TokenId sample(const TokenDistribution& dist, Rng& rng);

}  // namespace typdec
