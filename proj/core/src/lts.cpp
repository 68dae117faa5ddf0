// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "typdec/lts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace typdec {

namespace {

// Relative slack for cumulative sums reaching tau = 1.
constexpr double kCumulativeSlack = 1e-12;

TypicalSet make_set(const TokenDistribution& dist, std::vector<TokenId> members, bool fallback) {
    std::sort(members.begin(), members.end());
    auto renormalized = normalize(dist.vocab_ptr(), dist.probs(), members);
    return TypicalSet{std::move(members), std::move(renormalized), fallback};
}

}  // namespace

bool TypicalSet::contains(TokenId id) const {
    return std::binary_search(members.begin(), members.end(), id);
}

void LtsConfig::validate() const {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("lts.epsilon must be a finite value >= 0");
    }
    if (!(tau_mass > 0.0 && tau_mass <= 1.0)) {
        throw std::invalid_argument("lts.tau_mass must lie in (0, 1]");
    }
}

double typicality_deviation(const TokenDistribution& dist, TokenId token) {
    return std::abs(surprisal(dist, token) - entropy(dist));
}

TypicalSet typical_set_band(const TokenDistribution& dist, double alpha, double beta) {
    if (alpha > beta) {
        throw std::invalid_argument("typical band is inverted: alpha > beta");
    }
    const double h = entropy(dist);
    std::vector<TokenId> members;
    TokenId closest = 0;
    double closest_dev = std::numeric_limits<double>::infinity();
    const auto probs = dist.probs();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) continue;
        const double s = -std::log(probs[i]);
        if (s >= alpha && s <= beta) members.push_back(static_cast<TokenId>(i));
        const double dev = std::abs(s - h);
        if (dev < closest_dev) {
            closest_dev = dev;
            closest = static_cast<TokenId>(i);
        }
    }
    if (members.empty()) return make_set(dist, {closest}, true);
    return make_set(dist, std::move(members), false);
}

TypicalSet typical_set_mass(const TokenDistribution& dist, double tau_mass) {
    if (!(tau_mass > 0.0 && tau_mass <= 1.0)) {
        throw std::invalid_argument("tau_mass must lie in (0, 1]");
    }
    const double h = entropy(dist);
    std::vector<std::pair<double, TokenId>> ranked;
    const auto probs = dist.probs();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > 0.0) ranked.emplace_back(std::abs(-std::log(probs[i]) - h), static_cast<TokenId>(i));
    }
    std::sort(ranked.begin(), ranked.end());

    std::vector<TokenId> members;
    double cumulative = 0.0;
    for (const auto& [dev, id] : ranked) {
        members.push_back(id);
        cumulative += probs[id];
        if (cumulative >= tau_mass - kCumulativeSlack) break;
    }
    return make_set(dist, std::move(members), false);
}

LtsDraw lts_step(const TokenDistribution& dist, const LtsConfig& cfg, Rng& rng) {
    TypicalSet set = [&] {
        if (cfg.mode == LtsMode::band) {
            const double h = entropy(dist);
            return typical_set_band(dist, h - cfg.epsilon, h + cfg.epsilon);
        }
        return typical_set_mass(dist, cfg.tau_mass);
    }();
    const TokenId token = sample(set.renormalized, rng);
    return LtsDraw{token, std::move(set)};
}

}  // namespace typdec
