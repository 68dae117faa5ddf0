// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "typdec/core.hpp"

namespace typdec {

/// Argmax, lowest id on ties.
TokenId greedy_step(const TokenDistribution& dist);

/// Token ids ordered by descending probability, ascending id on ties.
/// Zero-probability tokens are omitted.
std::vector<TokenId> rank_by_probability(const TokenDistribution& dist);

/// The k most probable tokens (clamped to the support size).
std::vector<TokenId> topk_support(const TokenDistribution& dist, std::size_t k);

/// Smallest probability-ranked prefix with cumulative mass >= p.
std::vector<TokenId> nucleus_support(const TokenDistribution& dist, double p);

TokenId topk_step(const TokenDistribution& dist, std::size_t k, Rng& rng);
TokenId nucleus_step(const TokenDistribution& dist, double p, Rng& rng);

/// Surprise-feedback controller state. `mu` is the current truncation
/// budget in nats.
struct MirostatState {
    double mu = 6.0;
    double target_tau = 3.0;
    double eta = 0.1;

    /// mu starts at twice the target.
    static MirostatState with_target(double target_tau, double eta) {
        return MirostatState{2.0 * target_tau, target_tau, eta};
    }
};

struct MirostatDraw {
    TokenId token;
    MirostatState state;
    double observed_surprisal;
};

/// Keeps tokens with surprisal <= mu (argmax if none), samples, then moves
/// mu by -eta * (observed surprisal - target).
MirostatDraw mirostat_step(const TokenDistribution& dist, const MirostatState& state, Rng& rng);

}  // namespace typdec
