// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "typdec/asts.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace typdec {

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

double pick(const std::map<TokenId, double>* table, TokenId id, double computed) {
    if (table == nullptr) return computed;
    auto it = table->find(id);
    return it == table->end() ? computed : it->second;
}

template <typename Fn>
std::vector<double> call_provider(const char* what, const Vocabulary& vocab, Fn&& fn) {
    try {
        return fn();
    } catch (const ProviderError& e) {
        throw std::runtime_error(std::string(what) + " provider failed for token '" +
                                 vocab.token(e.token()) + "': " + e.what());
    }
}

}  // namespace

void AstsConfig::validate() const {
    for (double w : {k1, k2, lambda1, lambda2, lambda3, mu1, mu2, mu3, sigma_prior}) {
        if (!finite_nonneg(w)) throw std::invalid_argument("asts weights must be finite and >= 0");
    }
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw std::invalid_argument("asts.temperature must be > 0");
    }
    if (window_w < 1) throw std::invalid_argument("asts.window_w must be >= 1");
    if (!(eps_div > 0.0) || !std::isfinite(eps_div)) throw std::invalid_argument("asts.eps_div must be > 0");
    if (!(tau_mass > 0.0 && tau_mass <= 1.0)) throw std::invalid_argument("asts.tau_mass must lie in (0, 1]");
}

const CandidateScore* ScoreBreakdown::find(TokenId id) const {
    auto it = std::find_if(candidates.begin(), candidates.end(),
                           [id](const CandidateScore& c) { return c.token == id; });
    return it == candidates.end() ? nullptr : &*it;
}

double sigma_entropy(std::span<const double> window, double sigma_prior) {
    if (window.size() < 2) return sigma_prior;
    double mean = 0.0;
    for (double h : window) mean += h;
    mean /= static_cast<double>(window.size());
    double ss = 0.0;
    for (double h : window) ss += (h - mean) * (h - mean);
    return std::sqrt(ss / static_cast<double>(window.size()));
}

std::pair<double, double> dynamic_thresholds(double h, double sigma, double k1, double k2) {
    if (k1 < 0.0 || k2 < 0.0) throw std::invalid_argument("threshold scale factors must be >= 0");
    return {h - k1 * sigma, h + k2 * sigma};
}

double coherence_score(double surprisal, double h) { return 1.0 - std::abs(surprisal - h); }

double diversity_score(std::size_t freq, double eps_div) {
    return 1.0 / (static_cast<double>(freq) + eps_div);
}

double composite_score(double coherence, double sa, double diversity, const AstsConfig& cfg) {
    return cfg.lambda1 * coherence + cfg.lambda2 * sa + cfg.lambda3 * diversity;
}

double repetition_penalty(std::size_t freq, std::size_t context_len) {
    if (context_len == 0) return 0.0;
    return static_cast<double>(freq) / static_cast<double>(context_len);
}

double reward(double sa, double relevance, double rep, const AstsConfig& cfg) {
    return cfg.mu1 * sa + cfg.mu2 * relevance - cfg.mu3 * rep;
}

double adjust_weight(double p, double s, double r) { return p * std::exp(s + r); }

double adjust_weight_eq13(double p, double r) { return p * std::exp(r - p); }

ScoreBreakdown asts_score(const TokenDistribution& dist, const GenerationContext& ctx,
                          const AstsConfig& cfg, const AlignmentProvider& align,
                          const RelevanceProvider& relevance, const ScoreOverrides* overrides) {
    ScoreBreakdown out;
    out.entropy = entropy(dist);
    const auto window = ctx.entropy_window();
    out.sigma = sigma_entropy(window, cfg.sigma_prior);
    std::tie(out.alpha, out.beta) = dynamic_thresholds(out.entropy, out.sigma, cfg.k1, cfg.k2);

    const TypicalSet set = cfg.candidates == CandidateMode::mass
                               ? typical_set_mass(dist, cfg.tau_mass)
                               : typical_set_band(dist, out.alpha, out.beta);
    out.fallback = set.fallback;
    const auto& members = set.members;

    const auto& vocab = dist.vocab();
    const auto sa = call_provider("alignment", vocab, [&] { return align.alignment(members, ctx); });
    const auto relv = call_provider("relevance", vocab, [&] { return relevance.relevance(members, ctx); });
    if (sa.size() != members.size() || relv.size() != members.size()) {
        throw std::runtime_error("provider returned the wrong number of scores");
    }

    const auto* div_override = overrides ? &overrides->diversity : nullptr;
    const auto* rep_override = overrides ? &overrides->repetition_penalty : nullptr;
    const auto* s_override = overrides ? &overrides->composite : nullptr;
    const auto* r_override = overrides ? &overrides->reward : nullptr;

    std::vector<double> weights(dist.size(), 0.0);
    out.candidates.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        const TokenId id = members[i];
        CandidateScore c;
        c.token = id;
        c.prob = dist[id];
        c.surprisal = -std::log(c.prob);
        c.coherence = coherence_score(c.surprisal, out.entropy);
        c.semantic_alignment = sa[i];
        c.diversity = pick(div_override, id, diversity_score(ctx.frequency(id), cfg.eps_div));
        c.composite = pick(s_override, id, composite_score(c.coherence, c.semantic_alignment, c.diversity, cfg));
        c.relevance = relv[i];
        c.repetition_penalty = pick(rep_override, id, repetition_penalty(ctx.frequency(id), ctx.length()));
        c.reward = pick(r_override, id, reward(c.semantic_alignment, c.relevance, c.repetition_penalty, cfg));
        c.adjusted_weight = cfg.adjust_form == AdjustForm::example ? adjust_weight(c.prob, c.composite, c.reward)
                                                                   : adjust_weight_eq13(c.prob, c.reward);
        weights[id] = c.adjusted_weight;
        out.candidates.push_back(c);
    }

    const auto normalized = normalize(dist.vocab_ptr(), weights, members);
    const auto scaled = temperature_scale(normalized, cfg.temperature, members);
    for (auto& c : out.candidates) {
        c.normalized = normalized[c.token];
        c.final_prob = scaled[c.token];
    }
    return out;
}

TokenDistribution final_distribution(const ScoreBreakdown& breakdown, VocabPtr vocab) {
    std::vector<double> probs(vocab->size(), 0.0);
    std::vector<TokenId> support;
    for (const auto& c : breakdown.candidates) {
        probs[c.token] = c.final_prob;
        support.push_back(c.token);
    }
    return normalize(std::move(vocab), probs, support);
}

AstsDraw asts_step(const TokenDistribution& dist, GenerationContext& ctx, const AstsConfig& cfg,
                   const AlignmentProvider& align, const RelevanceProvider& relevance, Rng& rng,
                   const ScoreOverrides* overrides) {
    ScoreBreakdown breakdown = asts_score(dist, ctx, cfg, align, relevance, overrides);
    const TokenId token = sample(final_distribution(breakdown, dist.vocab_ptr()), rng);
    breakdown.chosen = token;
    ctx.record(token, breakdown.entropy);
    return AstsDraw{token, std::move(breakdown)};
}

}  // namespace typdec
