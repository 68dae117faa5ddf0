// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <unordered_map>
#include <vector>

#include "typdec/core.hpp"

namespace typdec {

/// Token history of one sequence plus the running statistics samplers read:
/// per-token occurrence counts and a bounded window of recent step entropies.
class GenerationContext {
public:
    explicit GenerationContext(std::size_t entropy_window = 8);

    /// Seeds the history (e.g. with a prompt). Prompt tokens count toward
    /// frequencies but contribute no entropy samples.
    GenerationContext(std::span<const TokenId> prompt, std::size_t entropy_window);

    void push_token(TokenId token);
    void push_entropy(double h);
    /// push_token + push_entropy.
    void record(TokenId token, double step_entropy) {
        push_token(token);
        push_entropy(step_entropy);
    }

    std::span<const TokenId> history() const noexcept { return history_; }
    std::size_t length() const noexcept { return history_.size(); }
    std::size_t frequency(TokenId token) const;
    const std::unordered_map<TokenId, std::size_t>& frequencies() const noexcept { return freq_; }

    std::vector<double> entropy_window() const { return {window_.begin(), window_.end()}; }
    std::size_t window_capacity() const noexcept { return capacity_; }

private:
    std::vector<TokenId> history_;
    std::unordered_map<TokenId, std::size_t> freq_;
    std::deque<double> window_;
    std::size_t capacity_;
};

}  // namespace typdec
