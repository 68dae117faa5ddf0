// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "typdec/core.hpp"
#include "typdec/providers.hpp"

namespace typdec {

/// Malformed embedding file; `line()` is 1-based.
class EmbeddingFormatError : public std::runtime_error {
public:
    EmbeddingFormatError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Token string -> fixed-length vector. Immutable after construction.
class EmbeddingTable {
public:
    EmbeddingTable(std::size_t dim, std::unordered_map<std::string, std::vector<double>> vectors);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return vectors_.size(); }
    bool contains(std::string_view token) const;
    /// Throws std::out_of_range naming the token.
    std::span<const double> at(std::string_view token) const;

private:
    std::size_t dim_;
    std::unordered_map<std::string, std::vector<double>> vectors_;
};

/// Plain-text word-vector format: a "<count> <dim>" header, then one
/// "<token> v1 ... v_dim" row per token.
EmbeddingTable parse_table(std::istream& in);
EmbeddingTable load_table(const std::filesystem::path& path);
void write_table(std::ostream& out, const EmbeddingTable& table, std::span<const std::string> order);

/// Unit vectors derived from a hash of (seed, token string). Stable across
/// platforms.
EmbeddingTable synthetic_table(const Vocabulary& vocab, std::size_t dim, std::uint64_t seed);

/// Throws std::invalid_argument on length mismatch and std::domain_error
/// ("undefined similarity") when either norm is zero.
double cosine(std::span<const double> a, std::span<const double> b);

enum class Pooling { mean, decay };

struct PoolingOptions {
    Pooling mode = Pooling::mean;
    /// Weight ratio between consecutive positions for Pooling::decay; the
    /// newest token has weight 1.
    double decay = 0.9;
    /// Only the last `context_window` tokens are pooled; 0 pools everything.
    std::size_t context_window = 0;
};

/// Pooled embedding of the history. Throws std::invalid_argument("no
/// context") on an empty history and std::out_of_range for a token missing
/// from the table.
std::vector<double> context_embedding(std::span<const TokenId> history, const Vocabulary& vocab,
                                      const EmbeddingTable& table, const PoolingOptions& pooling = {});

/// Cosine between each candidate and the pooled context. An empty context
/// scores 0 for every candidate.
class EmbeddingAlignment final : public AlignmentProvider {
public:
    EmbeddingAlignment(VocabPtr vocab, std::shared_ptr<const EmbeddingTable> table,
                       PoolingOptions pooling = {});

    std::vector<double> alignment(std::span<const TokenId> candidates,
                                  const GenerationContext& ctx) const override;

private:
    VocabPtr vocab_;
    std::shared_ptr<const EmbeddingTable> table_;
    PoolingOptions pooling_;
};

}  // namespace typdec
