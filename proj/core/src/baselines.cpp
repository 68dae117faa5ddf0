// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "typdec/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace typdec {

namespace {

TokenId sample_from(const TokenDistribution& dist, const std::vector<TokenId>& support, Rng& rng) {
    return sample(normalize(dist.vocab_ptr(), dist.probs(), support), rng);
}

}  // namespace

TokenId greedy_step(const TokenDistribution& dist) {
    const auto probs = dist.probs();
    // max_element keeps the first maximum, i.e. the lowest id.
    return static_cast<TokenId>(std::max_element(probs.begin(), probs.end()) - probs.begin());
}

std::vector<TokenId> rank_by_probability(const TokenDistribution& dist) {
    std::vector<TokenId> ids = dist.support();
    std::stable_sort(ids.begin(), ids.end(), [&](TokenId a, TokenId b) { return dist[a] > dist[b]; });
    return ids;
}

std::vector<TokenId> topk_support(const TokenDistribution& dist, std::size_t k) {
    if (k < 1) throw std::invalid_argument("top-k requires k >= 1");
    auto ranked = rank_by_probability(dist);
    if (ranked.size() > k) ranked.resize(k);
    std::sort(ranked.begin(), ranked.end());
    return ranked;
}

std::vector<TokenId> nucleus_support(const TokenDistribution& dist, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("nucleus p must lie in (0, 1]");
    auto ranked = rank_by_probability(dist);
    double cumulative = 0.0;
    std::size_t keep = ranked.size();
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        cumulative += dist[ranked[i]];
        if (cumulative >= p - 1e-12) {
            keep = i + 1;
            break;
        }
    }
    ranked.resize(keep);
    std::sort(ranked.begin(), ranked.end());
    return ranked;
}

TokenId topk_step(const TokenDistribution& dist, std::size_t k, Rng& rng) {
    return sample_from(dist, topk_support(dist, k), rng);
}

TokenId nucleus_step(const TokenDistribution& dist, double p, Rng& rng) {
    return sample_from(dist, nucleus_support(dist, p), rng);
}

MirostatDraw mirostat_step(const TokenDistribution& dist, const MirostatState& state, Rng& rng) {
    std::vector<TokenId> kept;
    const auto probs = dist.probs();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > 0.0 && -std::log(probs[i]) <= state.mu) kept.push_back(static_cast<TokenId>(i));
    }
    if (kept.empty()) kept.push_back(greedy_step(dist));

    const TokenId token = sample_from(dist, kept, rng);
    const double observed = surprisal(dist, token);
    MirostatState next = state;
    next.mu = state.mu - state.eta * (observed - state.target_tau);
    return MirostatDraw{token, next, observed};
}

}  // namespace typdec
