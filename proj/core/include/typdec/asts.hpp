// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "typdec/context.hpp"
#include "typdec/core.hpp"
#include "typdec/lts.hpp"
#include "typdec/providers.hpp"

namespace typdec {

/// How the reward enters the probability adjustment.
enum class AdjustForm {
    example,  ///< p * exp(S + R)
    eq13,     ///< p * exp(R - p)
};

/// How the candidate set is formed before scoring.
enum class CandidateMode {
    dynamic_band,  ///< surprisal within [H - k1*sigma, H + k2*sigma]
    mass,          ///< deviation-sorted prefix with mass >= tau_mass
};

struct AstsConfig {
    double k1 = 0.3;
    double k2 = 0.3;
    double lambda1 = 0.4;  // coherence
    double lambda2 = 0.4;  // semantic alignment
    double lambda3 = 0.2;  // diversity
    double mu1 = 0.5;      // semantic alignment
    double mu2 = 0.3;      // relevance
    double mu3 = 0.2;      // repetition penalty
    double temperature = 1.0;
    std::size_t window_w = 8;
    double eps_div = 1.0;
    double sigma_prior = 0.6;
    AdjustForm adjust_form = AdjustForm::example;
    CandidateMode candidates = CandidateMode::dynamic_band;
    double tau_mass = 0.2;

    void validate() const;
};

/// Audit record for one candidate.
struct CandidateScore {
    TokenId token = 0;
    double prob = 0.0;
    double surprisal = 0.0;
    double coherence = 0.0;
    double semantic_alignment = 0.0;
    double diversity = 0.0;
    double composite = 0.0;
    double relevance = 0.0;
    double repetition_penalty = 0.0;
    double reward = 0.0;
    double adjusted_weight = 0.0;
    double normalized = 0.0;
    double final_prob = 0.0;
};

/// Everything asts_step computed for one decoding step.
struct ScoreBreakdown {
    double entropy = 0.0;
    double sigma = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    bool fallback = false;
    std::vector<CandidateScore> candidates;  // ascending token id
    TokenId chosen = 0;

    const CandidateScore* find(TokenId id) const;
};

/// Per-token values that replace the computed ones. Used to replay worked
/// examples whose intermediate scores are given rather than derived.
struct ScoreOverrides {
    std::map<TokenId, double> diversity;
    std::map<TokenId, double> repetition_penalty;
    std::map<TokenId, double> composite;
    std::map<TokenId, double> reward;
};

/// Population standard deviation of the window; sigma_prior while fewer
/// than two entries exist.
double sigma_entropy(std::span<const double> entropy_window, double sigma_prior);

/// (h - k1*sigma, h + k2*sigma).
std::pair<double, double> dynamic_thresholds(double h, double sigma, double k1, double k2);

/// 1 - |surprisal - h|. Unclamped.
double coherence_score(double surprisal, double h);

/// 1 / (freq + eps_div).
double diversity_score(std::size_t freq, double eps_div);

double composite_score(double coherence, double sa, double diversity, const AstsConfig& cfg);

/// freq / context_len, 0 for an empty context.
double repetition_penalty(std::size_t freq, std::size_t context_len);

double reward(double sa, double relevance, double rep, const AstsConfig& cfg);

/// p * exp(s + r).
double adjust_weight(double p, double s, double r);

/// p * exp(r - p).
double adjust_weight_eq13(double p, double r);

struct AstsDraw {
    TokenId token;
    ScoreBreakdown breakdown;
};

/// One full ASTS step: candidate band from the entropy and its recent
/// spread, composite and reward scoring, exponential adjustment,
/// renormalization, temperature, draw. Appends the token and the step
/// entropy to `ctx`. Provider failures are rethrown as std::runtime_error
/// naming the candidate token.
AstsDraw asts_step(const TokenDistribution& dist, GenerationContext& ctx, const AstsConfig& cfg,
                   const AlignmentProvider& align, const RelevanceProvider& relevance, Rng& rng,
                   const ScoreOverrides* overrides = nullptr);

/// Scores and final distribution without drawing or touching the context.
/// `chosen` is left at 0.
ScoreBreakdown asts_score(const TokenDistribution& dist, const GenerationContext& ctx,
                          const AstsConfig& cfg, const AlignmentProvider& align,
                          const RelevanceProvider& relevance, const ScoreOverrides* overrides = nullptr);

/// Final distribution (zero outside the candidates) described by a breakdown.
TokenDistribution final_distribution(const ScoreBreakdown& breakdown, VocabPtr vocab);

}  // namespace typdec
