// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "typdec/context.hpp"

#include <stdexcept>

namespace typdec {

GenerationContext::GenerationContext(std::size_t entropy_window) : capacity_(entropy_window) {
    if (capacity_ == 0) throw std::invalid_argument("entropy window must hold at least one entry");
}

GenerationContext::GenerationContext(std::span<const TokenId> prompt, std::size_t entropy_window)
    : GenerationContext(entropy_window) {
    for (TokenId t : prompt) push_token(t);
}

void GenerationContext::push_token(TokenId token) {
    history_.push_back(token);
    ++freq_[token];
}

void GenerationContext::push_entropy(double h) {
    window_.push_back(h);
    while (window_.size() > capacity_) window_.pop_front();
}

std::size_t GenerationContext::frequency(TokenId token) const {
    auto it = freq_.find(token);
    return it == freq_.end() ? 0 : it->second;
}

}  // namespace typdec
