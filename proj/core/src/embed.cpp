// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "typdec/embed.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "typdec/rng.hpp"

namespace typdec {

namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const auto next = line.find(' ', pos);
        const auto end = next == std::string_view::npos ? line.size() : next;
        fields.push_back(line.substr(pos, end - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return fields;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
    if (text.empty()) return false;
    const auto* first = text.data();
    const auto* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dim, std::unordered_map<std::string, std::vector<double>> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {
    if (dim_ == 0) throw std::invalid_argument("embedding dimension must be positive");
    if (vectors_.empty()) throw std::invalid_argument("embedding table is empty");
    for (const auto& [token, v] : vectors_) {
        if (v.size() != dim_) throw std::invalid_argument("embedding for '" + token + "' has the wrong length");
        for (double x : v) {
            if (!std::isfinite(x)) throw std::invalid_argument("embedding for '" + token + "' is not finite");
        }
    }
}

bool EmbeddingTable::contains(std::string_view token) const {
    return vectors_.find(std::string(token)) != vectors_.end();
}

std::span<const double> EmbeddingTable::at(std::string_view token) const {
    auto it = vectors_.find(std::string(token));
    if (it == vectors_.end()) throw std::out_of_range("no embedding for token '" + std::string(token) + "'");
    return it->second;
}

EmbeddingTable parse_table(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) throw EmbeddingFormatError(1, "missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_spaces(line);
    std::size_t count = 0;
    std::size_t dim = 0;
    if (header.size() != 2 || !parse_number(header[0], count) || !parse_number(header[1], dim) || dim == 0) {
        throw EmbeddingFormatError(1, "header must be \"<count> <dim>\"");
    }

    std::unordered_map<std::string, std::vector<double>> vectors;
    vectors.reserve(count);
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_spaces(line);
        if (fields.size() != dim + 1) {
            throw EmbeddingFormatError(line_no, "expected " + std::to_string(dim) + " values, found " +
                                                    std::to_string(fields.size() - 1));
        }
        std::vector<double> v(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            if (!parse_number(fields[i + 1], v[i]) || !std::isfinite(v[i])) {
                throw EmbeddingFormatError(line_no, "bad value '" + std::string(fields[i + 1]) + "'");
            }
        }
        std::string token(fields[0]);
        if (token.empty()) throw EmbeddingFormatError(line_no, "empty token");
        if (!vectors.emplace(token, std::move(v)).second) {
            throw EmbeddingFormatError(line_no, "duplicate token '" + token + "'");
        }
    }
    if (vectors.size() != count) {
        throw EmbeddingFormatError(line_no, "header declares " + std::to_string(count) + " rows, found " +
                                                std::to_string(vectors.size()));
    }
    return EmbeddingTable(dim, std::move(vectors));
}

EmbeddingTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open embedding table " + path.string());
    return parse_table(in);
}

void write_table(std::ostream& out, const EmbeddingTable& table, std::span<const std::string> order) {
    out << order.size() << ' ' << table.dim() << '\n';
    std::ostringstream row;
    row.precision(17);
    for (const auto& token : order) {
        row.str({});
        row << token;
        for (double x : table.at(token)) row << ' ' << x;
        out << row.str() << '\n';
    }
}

EmbeddingTable synthetic_table(const Vocabulary& vocab, std::size_t dim, std::uint64_t seed) {
    std::unordered_map<std::string, std::vector<double>> vectors;
    vectors.reserve(vocab.size());
    for (const auto& token : vocab.tokens()) {
        const std::uint64_t base = splitmix64(seed ^ fnv1a(token));
        std::vector<double> v(dim);
        double norm2 = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = 2.0 * unit_from_hash(splitmix64(base + i)) - 1.0;
            norm2 += v[i] * v[i];
        }
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) {
            v[0] = 1.0;
        } else {
            for (double& x : v) x /= norm;
        }
        vectors.emplace(token, std::move(v));
    }
    return EmbeddingTable(dim, std::move(vectors));
}

double cosine(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("cosine of vectors with different lengths");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) throw std::domain_error("undefined similarity: zero-norm vector");
    const double c = dot / (std::sqrt(na) * std::sqrt(nb));
    return std::clamp(c, -1.0, 1.0);
}

std::vector<double> context_embedding(std::span<const TokenId> history, const Vocabulary& vocab,
                                      const EmbeddingTable& table, const PoolingOptions& pooling) {
    if (history.empty()) throw std::invalid_argument("no context");
    if (pooling.context_window > 0 && history.size() > pooling.context_window) {
        history = history.subspan(history.size() - pooling.context_window);
    }
    std::vector<double> acc(table.dim(), 0.0);
    double total_weight = 0.0;
    double weight = 1.0;
    // Walk newest to oldest so decay weights are 1, d, d^2, ...
    for (auto it = history.rbegin(); it != history.rend(); ++it) {
        const auto v = table.at(vocab.token(*it));
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += weight * v[i];
        total_weight += weight;
        if (pooling.mode == Pooling::decay) weight *= pooling.decay;
    }
    for (double& x : acc) x /= total_weight;
    return acc;
}

EmbeddingAlignment::EmbeddingAlignment(VocabPtr vocab, std::shared_ptr<const EmbeddingTable> table,
                                       PoolingOptions pooling)
    : vocab_(std::move(vocab)), table_(std::move(table)), pooling_(pooling) {}

std::vector<double> EmbeddingAlignment::alignment(std::span<const TokenId> candidates,
                                                  const GenerationContext& ctx) const {
    std::vector<double> out(candidates.size(), 0.0);
    if (ctx.length() == 0) return out;
    const auto context = context_embedding(ctx.history(), *vocab_, *table_, pooling_);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const TokenId id = candidates[i];
        const auto& token = vocab_->token(id);
        if (!table_->contains(token)) throw ProviderError(id, "no embedding");
        out[i] = cosine(table_->at(token), context);
    }
    return out;
}

}  // namespace typdec
