// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "typdec/core.hpp"

namespace typdec {

/// Candidate tokens admitted for sampling, with their masses renormalized
/// over the set (zero elsewhere).
struct TypicalSet {
    std::vector<TokenId> members;  // ascending ids
    TokenDistribution renormalized;
    /// True when no token met the criterion and the minimal-deviation
    /// singleton was substituted.
    bool fallback = false;

    bool contains(TokenId id) const;
};

enum class LtsMode { band, mass };

struct LtsConfig {
    LtsMode mode = LtsMode::mass;
    /// Band half-width around the entropy: admits surprisal in [H - eps, H + eps].
    double epsilon = 0.5;
    /// Mass threshold for the deviation-sorted prefix, in (0, 1].
    double tau_mass = 0.2;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

/// |surprisal(token) - H(dist)|.
double typicality_deviation(const TokenDistribution& dist, TokenId token);

/// Tokens whose surprisal lies in [alpha, beta]. An empty band yields the
/// token of minimal typicality deviation (lowest id on ties).
TypicalSet typical_set_band(const TokenDistribution& dist, double alpha, double beta);

/// Smallest prefix of tokens ranked by ascending typicality deviation (ties
/// by ascending id) whose cumulative mass reaches tau_mass.
TypicalSet typical_set_mass(const TokenDistribution& dist, double tau_mass);

struct LtsDraw {
    TokenId token;
    TypicalSet set;
};

LtsDraw lts_step(const TokenDistribution& dist, const LtsConfig& cfg, Rng& rng);

}  // namespace typdec
