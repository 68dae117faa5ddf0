// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "typdec/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace typdec {

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    if (tokens_.empty()) {
        throw std::invalid_argument("vocabulary must contain at least one token");
    }
    index_.reserve(tokens_.size());
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        if (!index_.emplace(tokens_[i], static_cast<TokenId>(i)).second) {
            throw std::invalid_argument("duplicate token in vocabulary: '" + tokens_[i] + "'");
        }
    }
}

std::shared_ptr<const Vocabulary> Vocabulary::numbered(std::size_t n, std::string_view prefix) {
    std::vector<std::string> tokens;
    tokens.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        tokens.push_back(std::string(prefix) + std::to_string(i));
    }
    return std::make_shared<const Vocabulary>(std::move(tokens));
}

const std::string& Vocabulary::token(TokenId id) const {
    if (id >= tokens_.size()) {
        throw std::out_of_range("token id " + std::to_string(id) + " outside vocabulary of size " +
                                std::to_string(tokens_.size()));
    }
    return tokens_[id];
}

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

TokenId Vocabulary::id(std::string_view token) const {
    if (auto found = find(token)) return *found;
    throw std::out_of_range("unknown token '" + std::string(token) + "'");
}

TokenDistribution::TokenDistribution(VocabPtr vocab, std::vector<double> probs)
    : vocab_(std::move(vocab)), probs_(std::move(probs)) {
    if (!vocab_) throw std::invalid_argument("distribution requires a vocabulary");
    if (probs_.size() != vocab_->size()) {
        throw std::invalid_argument("distribution has " + std::to_string(probs_.size()) +
                                    " entries for a vocabulary of " + std::to_string(vocab_->size()));
    }
    double total = 0.0;
    for (double p : probs_) {
        if (!std::isfinite(p) || p < 0.0) {
            throw std::invalid_argument("probabilities must be finite and nonnegative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kMassTolerance) {
        throw std::invalid_argument("probabilities sum to " + std::to_string(total) + ", not 1");
    }
}

TokenDistribution TokenDistribution::from_logits(VocabPtr vocab, std::span<const double> logits) {
    if (logits.empty()) throw std::invalid_argument("no logits");
    const double max_logit = *std::max_element(logits.begin(), logits.end());
    std::vector<double> probs(logits.size());
    double total = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        probs[i] = std::exp(logits[i] - max_logit);
        total += probs[i];
    }
    for (double& p : probs) p /= total;
    return TokenDistribution(std::move(vocab), std::move(probs));
}

TokenDistribution TokenDistribution::one_hot(VocabPtr vocab, TokenId id) {
    std::vector<double> probs(vocab->size(), 0.0);
    probs.at(id) = 1.0;
    return TokenDistribution(std::move(vocab), std::move(probs));
}

TokenDistribution TokenDistribution::uniform(VocabPtr vocab) {
    const std::size_t n = vocab->size();
    return TokenDistribution(std::move(vocab), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

std::vector<TokenId> TokenDistribution::support() const {
    std::vector<TokenId> ids;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (probs_[i] > 0.0) ids.push_back(static_cast<TokenId>(i));
    }
    return ids;
}

double entropy(const TokenDistribution& dist) {
    double h = 0.0;
    for (double p : dist.probs()) {
        if (p >= kProbFloor) h -= p * std::log(p);
    }
    return h;
}

double surprisal(const TokenDistribution& dist, TokenId token) {
    const double p = dist[token];
    if (p <= 0.0) {
        throw std::domain_error("infinite surprisal: token '" + dist.vocab().token(token) +
                                "' has zero probability");
    }
    return -std::log(p);
}

TokenDistribution normalize(VocabPtr vocab, std::span<const double> weights,
                            std::span<const TokenId> support) {
    if (weights.size() != vocab->size()) {
        throw std::invalid_argument("weight vector length does not match vocabulary");
    }
    double total = 0.0;
    for (TokenId id : support) {
        const double w = weights[id];
        if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("weights must be finite and nonnegative");
        total += w;
    }
    if (!(total > 0.0)) throw std::domain_error("empty mass");
    std::vector<double> probs(vocab->size(), 0.0);
    for (TokenId id : support) probs[id] = weights[id] / total;
    return TokenDistribution(std::move(vocab), std::move(probs));
}

TokenDistribution temperature_scale(const TokenDistribution& dist, double temperature,
                                    std::span<const TokenId> support) {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw std::invalid_argument("invalid temperature: " + std::to_string(temperature));
    }
    std::vector<double> weights(dist.size(), 0.0);
    if (temperature == 1.0) {
        for (TokenId id : support) weights[id] = dist[id];
        return normalize(dist.vocab_ptr(), weights, support);
    }
    // p^(1/T) = exp(ln p / T); shift by the largest log so the top entry is 1.
    double max_log = -std::numeric_limits<double>::infinity();
    for (TokenId id : support) {
        if (dist[id] > 0.0) max_log = std::max(max_log, std::log(dist[id]));
    }
    if (!std::isfinite(max_log)) throw std::domain_error("empty mass");
    for (TokenId id : support) {
        const double p = dist[id];
        weights[id] = p > 0.0 ? std::exp((std::log(p) - max_log) / temperature) : 0.0;
    }
    return normalize(dist.vocab_ptr(), weights, support);
}

TokenId sample(const TokenDistribution& dist, Rng& rng) {
    const auto probs = dist.probs();
    const double target = rng.uniform();
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) continue;
        cumulative += probs[i];
        last_positive = i;
        if (target < cumulative) return static_cast<TokenId>(i);
    }
    // Rounding can leave the cumulative sum a hair under the draw.
    return static_cast<TokenId>(last_positive);
}

}  // namespace typdec
