// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "typdec/providers.hpp"

#include <algorithm>
#include <cctype>

namespace typdec {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::vector<double> FixedScores::lookup(std::span<const TokenId> candidates,
                                        const GenerationContext&) const {
    std::vector<double> out;
    out.reserve(candidates.size());
    for (TokenId id : candidates) {
        auto it = values_.find(id);
        if (it == values_.end()) throw ProviderError(id, "no fixed score");
        out.push_back(it->second);
    }
    return out;
}

KeywordOverlapRelevance::KeywordOverlapRelevance(VocabPtr vocab, std::vector<std::string> keywords)
    : vocab_(std::move(vocab)) {
    for (const auto& k : keywords) {
        if (k.empty()) continue;
        keywords_.push_back(lower(k));
    }
    std::sort(keywords_.begin(), keywords_.end());
    keywords_.erase(std::unique(keywords_.begin(), keywords_.end()), keywords_.end());
}

double KeywordOverlapRelevance::score(std::string_view token) const {
    if (keywords_.empty()) return 0.0;
    const std::string t = lower(token);
    const auto hits = std::count_if(keywords_.begin(), keywords_.end(),
                                    [&](const std::string& k) { return t.find(k) != std::string::npos; });
    return static_cast<double>(hits) / static_cast<double>(keywords_.size());
}

std::vector<double> KeywordOverlapRelevance::relevance(std::span<const TokenId> candidates,
                                                       const GenerationContext&) const {
    std::vector<double> out;
    out.reserve(candidates.size());
    for (TokenId id : candidates) out.push_back(score(vocab_->token(id)));
    return out;
}

}  // namespace typdec
