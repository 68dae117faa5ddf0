// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "typdec/core.hpp"

namespace typdec {

using TokenSequence = std::vector<TokenId>;

/// Non-empty list of sequences over one vocabulary.
class SequenceCorpus {
public:
    /// Throws std::invalid_argument when empty or when an id is out of range.
    SequenceCorpus(VocabPtr vocab, std::vector<TokenSequence> sequences);

    const Vocabulary& vocab() const noexcept { return *vocab_; }
    const VocabPtr& vocab_ptr() const noexcept { return vocab_; }
    const std::vector<TokenSequence>& sequences() const noexcept { return sequences_; }
    std::size_t token_count() const noexcept;

private:
    VocabPtr vocab_;
    std::vector<TokenSequence> sequences_;
};

/// Probability the scoring model assigns to `next` after `prefix` (the
/// preceding tokens of the same sequence).
using StepScorer = std::function<double(std::span<const TokenId> prefix, TokenId next)>;

/// exp of the mean negative log-likelihood over every token of the corpus.
/// Throws std::domain_error("zero likelihood") if the scorer returns 0.
double perplexity(const SequenceCorpus& corpus, const StepScorer& scorer);

/// Fraction of positions t in [1, N) whose token occurs among the previous
/// min(l, t) tokens. Throws std::domain_error for sequences shorter than 2.
double rep_l(std::span<const TokenId> seq, std::size_t l);

struct ZipfRange {
    std::size_t min_rank = 1;
    std::size_t max_rank = 0;  // 0 = no upper bound
};

/// Negated least-squares slope of ln(frequency) against ln(rank). Throws
/// std::domain_error with fewer than two distinct tokens in range.
double zipf_coefficient(const SequenceCorpus& corpus, const ZipfRange& range = {});

/// Same fit on an explicit frequency table (any order).
double zipf_coefficient(std::span<const std::size_t> frequencies, const ZipfRange& range = {});

/// Unique/total n-gram fractions for n = 1..4. Throws std::domain_error for
/// sequences shorter than 4.
std::array<double, 4> ngram_fractions(std::span<const TokenId> seq);

/// Mean of ngram_fractions.
double ngram_diversity(std::span<const TokenId> seq);

inline constexpr std::array<std::size_t, 3> kRepWindows{16, 32, 128};

struct MetricsReport {
    double ppl = 0.0;
    std::optional<double> ppl_delta;
    std::map<std::size_t, double> rep;  // keyed by window length
    double zipf = 0.0;
    std::optional<double> zipf_delta;
    double diversity = 0.0;      // mean over sequences of ngram_diversity
    double diversity_sum = 0.0;  // diversity * 4
    std::size_t sequence_count = 0;
    std::size_t token_count = 0;
};

/// All metrics for `generated`; per-sequence metrics are averaged over
/// sequences. With a reference corpus, ppl and zipf deltas are absolute
/// differences against the same metrics on the reference.
MetricsReport report(const SequenceCorpus& generated, const StepScorer& scorer,
                     const SequenceCorpus* reference = nullptr, const ZipfRange& zipf_range = {});

}  // namespace typdec
