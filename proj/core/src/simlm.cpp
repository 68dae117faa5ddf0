// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "typdec/simlm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "typdec/rng.hpp"

namespace typdec {

namespace {

constexpr std::uint64_t kTokenStride = 0xd1b54a32d192ed03ULL;

double peaked_shape(double u) { return 0.05 + 4.0 * std::pow(u, 6); }
double flat_shape(double u) { return 0.5 + 0.5 * u; }

}  // namespace

LmKind parse_lm_kind(std::string_view name) {
    if (name == "peaked") return LmKind::peaked;
    if (name == "flat") return LmKind::flat;
    if (name == "mixed") return LmKind::mixed;
    if (name == "loop_prone") return LmKind::loop_prone;
    throw std::invalid_argument("unknown synthetic model kind '" + std::string(name) + "'");
}

std::string_view to_string(LmKind kind) {
    switch (kind) {
        case LmKind::peaked: return "peaked";
        case LmKind::flat: return "flat";
        case LmKind::mixed: return "mixed";
        case LmKind::loop_prone: return "loop_prone";
    }
    return "?";
}

void LmProfile::validate() const {
    if (!(base_temperature > 0.0) || !std::isfinite(base_temperature)) {
        throw std::invalid_argument("base_temperature must be > 0");
    }
    if (!(loop_gamma >= 1.0) || !std::isfinite(loop_gamma)) throw std::invalid_argument("loop_gamma must be >= 1");
    if (recency_window < 1) throw std::invalid_argument("recency_window must be >= 1");
}

SyntheticLm::SyntheticLm(LmProfile profile, VocabPtr vocab) : profile_(profile), vocab_(std::move(vocab)) {
    profile_.validate();
    if (!vocab_) throw std::invalid_argument("synthetic model requires a vocabulary");
}

TokenDistribution SyntheticLm::next_distribution(std::span<const TokenId> history) const {
    const std::size_t order = std::min(profile_.recency_window, history.size());
    const auto suffix = history.subspan(history.size() - order);

    std::uint64_t h = splitmix64(profile_.seed ^ 0x5eed5eed5eed5eedULL);
    h = splitmix64(h + order);
    for (TokenId t : suffix) h = splitmix64(h ^ (static_cast<std::uint64_t>(t) + 1) * kTokenStride);

    const bool use_flat = profile_.kind == LmKind::flat || (profile_.kind == LmKind::mixed && (h & 1U) != 0);
    std::vector<double> logits(vocab_->size());
    for (std::size_t i = 0; i < logits.size(); ++i) {
        const double u = unit_from_hash(splitmix64(h + (i + 1) * kTokenStride));
        logits[i] = use_flat ? flat_shape(u) : peaked_shape(u);
    }
    if (profile_.kind == LmKind::loop_prone && profile_.loop_gamma != 1.0) {
        std::vector<bool> seen(logits.size(), false);
        for (TokenId t : suffix) {
            if (t < seen.size()) seen[t] = true;
        }
        for (std::size_t i = 0; i < logits.size(); ++i) {
            if (seen[i]) logits[i] *= profile_.loop_gamma;
        }
    }
    for (double& l : logits) l /= profile_.base_temperature;
    return TokenDistribution::from_logits(vocab_, logits);
}

GenerationResult generate(const LanguageModel& lm, Sampler& sampler, std::uint64_t seed, std::size_t max_tokens,
                          std::span<const TokenId> prompt, std::size_t entropy_window) {
    if (max_tokens < 1) throw std::invalid_argument("max_tokens must be >= 1");
    GenerationContext ctx(prompt, entropy_window);
    Rng rng(seed);
    GenerationResult out;
    out.tokens.reserve(max_tokens);
    out.entropy_trace.reserve(max_tokens);
    for (std::size_t step = 0; step < max_tokens; ++step) {
        const auto dist = lm.next_distribution(ctx.history());
        const std::size_t before = ctx.length();
        const TokenId token = sampler.step(dist, ctx, rng);
        if (ctx.length() != before + 1) throw std::logic_error("sampler did not record its token");
        out.tokens.push_back(token);
        out.entropy_trace.push_back(entropy(dist));
    }
    return out;
}

}  // namespace typdec
