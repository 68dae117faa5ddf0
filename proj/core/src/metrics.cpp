// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "typdec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace typdec {

SequenceCorpus::SequenceCorpus(VocabPtr vocab, std::vector<TokenSequence> sequences)
    : vocab_(std::move(vocab)), sequences_(std::move(sequences)) {
    if (!vocab_) throw std::invalid_argument("corpus requires a vocabulary");
    if (sequences_.empty()) throw std::invalid_argument("corpus is empty");
    for (const auto& seq : sequences_) {
        for (TokenId id : seq) {
            if (id >= vocab_->size()) {
                throw std::invalid_argument("token id " + std::to_string(id) + " outside vocabulary");
            }
        }
    }
}

std::size_t SequenceCorpus::token_count() const noexcept {
    std::size_t n = 0;
    for (const auto& seq : sequences_) n += seq.size();
    return n;
}

double perplexity(const SequenceCorpus& corpus, const StepScorer& scorer) {
    double nll = 0.0;
    std::size_t n = 0;
    for (const auto& seq : corpus.sequences()) {
        const std::span<const TokenId> all(seq);
        for (std::size_t t = 0; t < seq.size(); ++t) {
            const double p = scorer(all.first(t), seq[t]);
            if (!(p > 0.0)) throw std::domain_error("zero likelihood at position " + std::to_string(t));
            if (p > 1.0 + 1e-12) throw std::domain_error("scorer returned a probability above 1");
            nll -= std::log(p);
            ++n;
        }
    }
    if (n == 0) throw std::domain_error("perplexity of an empty corpus");
    return std::exp(nll / static_cast<double>(n));
}

double rep_l(std::span<const TokenId> seq, std::size_t l) {
    if (seq.size() < 2) throw std::domain_error("sequence too short for REP (need >= 2 tokens)");
    if (l < 1) throw std::invalid_argument("REP window must be >= 1");
    // last_seen[token] = most recent position; a repeat within the window
    // means the gap to the previous occurrence is at most l.
    std::unordered_map<TokenId, std::size_t> last_seen;
    last_seen[seq[0]] = 0;
    std::size_t repeats = 0;
    for (std::size_t t = 1; t < seq.size(); ++t) {
        auto it = last_seen.find(seq[t]);
        if (it != last_seen.end() && t - it->second <= l) ++repeats;
        last_seen[seq[t]] = t;
    }
    return static_cast<double>(repeats) / static_cast<double>(seq.size() - 1);
}

double zipf_coefficient(std::span<const std::size_t> frequencies, const ZipfRange& range) {
    std::vector<std::size_t> sorted;
    for (auto f : frequencies) {
        if (f > 0) sorted.push_back(f);
    }
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

    const std::size_t lo = std::max<std::size_t>(range.min_rank, 1);
    const std::size_t hi = range.max_rank == 0 ? sorted.size() : std::min(range.max_rank, sorted.size());
    if (hi < lo + 1) throw std::domain_error("degenerate frequency table: need >= 2 ranked tokens");

    const double n = static_cast<double>(hi - lo + 1);
    double sx = 0.0, sy = 0.0;
    for (std::size_t r = lo; r <= hi; ++r) {
        sx += std::log(static_cast<double>(r));
        sy += std::log(static_cast<double>(sorted[r - 1]));
    }
    const double mx = sx / n, my = sy / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t r = lo; r <= hi; ++r) {
        const double dx = std::log(static_cast<double>(r)) - mx;
        sxy += dx * (std::log(static_cast<double>(sorted[r - 1])) - my);
        sxx += dx * dx;
    }
    return -sxy / sxx;
}

double zipf_coefficient(const SequenceCorpus& corpus, const ZipfRange& range) {
    std::vector<std::size_t> freq(corpus.vocab().size(), 0);
    for (const auto& seq : corpus.sequences()) {
        for (TokenId id : seq) ++freq[id];
    }
    const auto distinct = std::count_if(freq.begin(), freq.end(), [](std::size_t f) { return f > 0; });
    if (distinct < 2) throw std::domain_error("degenerate frequency table: single distinct token");
    return zipf_coefficient(freq, range);
}

std::array<double, 4> ngram_fractions(std::span<const TokenId> seq) {
    if (seq.size() < 4) throw std::domain_error("sequence too short for n-gram diversity (need >= 4 tokens)");
    std::array<double, 4> out{};
    for (std::size_t n = 1; n <= 4; ++n) {
        std::set<std::vector<TokenId>> unique;
        const std::size_t total = seq.size() - n + 1;
        for (std::size_t i = 0; i < total; ++i) {
            unique.emplace(seq.begin() + static_cast<std::ptrdiff_t>(i),
                           seq.begin() + static_cast<std::ptrdiff_t>(i + n));
        }
        out[n - 1] = static_cast<double>(unique.size()) / static_cast<double>(total);
    }
    return out;
}

double ngram_diversity(std::span<const TokenId> seq) {
    const auto f = ngram_fractions(seq);
    return (f[0] + f[1] + f[2] + f[3]) / 4.0;
}

namespace {

struct CorpusMeans {
    std::map<std::size_t, double> rep;
    double diversity = 0.0;
};

CorpusMeans sequence_means(const SequenceCorpus& corpus) {
    CorpusMeans m;
    const double count = static_cast<double>(corpus.sequences().size());
    for (std::size_t l : kRepWindows) m.rep[l] = 0.0;
    for (const auto& seq : corpus.sequences()) {
        for (std::size_t l : kRepWindows) m.rep[l] += rep_l(seq, l);
        m.diversity += ngram_diversity(seq);
    }
    for (auto& [l, v] : m.rep) v /= count;
    m.diversity /= count;
    return m;
}

}  // namespace

MetricsReport report(const SequenceCorpus& generated, const StepScorer& scorer,
                     const SequenceCorpus* reference, const ZipfRange& zipf_range) {
    MetricsReport r;
    r.sequence_count = generated.sequences().size();
    r.token_count = generated.token_count();
    r.ppl = perplexity(generated, scorer);
    r.zipf = zipf_coefficient(generated, zipf_range);
    auto means = sequence_means(generated);
    r.rep = std::move(means.rep);
    r.diversity = means.diversity;
    r.diversity_sum = means.diversity * 4.0;
    if (reference != nullptr) {
        r.ppl_delta = std::abs(r.ppl - perplexity(*reference, scorer));
        r.zipf_delta = std::abs(r.zipf - zipf_coefficient(*reference, zipf_range));
    }
    return r;
}

}  // namespace typdec
