// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "typdec/core.hpp"

namespace typdec::testing {

/// Seven-token next-token distribution for the prompt "The AI system is
/// designed to".
inline VocabPtr worked_vocab() {
    static const auto vocab = std::make_shared<const Vocabulary>(std::vector<std::string>{
        "analyze", "optimize", "function", "tasks", "data", "errors", "solve"});
    return vocab;
}

inline TokenDistribution worked_distribution() {
    return TokenDistribution(worked_vocab(), {0.175, 0.172, 0.170, 0.165, 0.120, 0.100, 0.098});
}

enum WorkedToken : TokenId { analyze = 0, optimize, function, tasks, data, errors, solve };

/// Random distribution with a random number of exact zeros.
template <typename Gen>
TokenDistribution random_distribution(VocabPtr vocab, Gen& gen, bool allow_zeros = true) {
    std::vector<double> w(vocab->size());
    double total = 0.0;
    for (auto& x : w) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        x = (allow_zeros && u < 0.1) ? 0.0 : -std::log(1.0 - u) * (1.0 + 10.0 * u * u);
        total += x;
    }
    if (total == 0.0) {
        w[0] = 1.0;
        total = 1.0;
    }
    for (auto& x : w) x /= total;
    return TokenDistribution(std::move(vocab), std::move(w));
}

}  // namespace typdec::testing
