// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "harness/errors.hpp"
#include "typdec/typdec.hpp"

namespace typdec::harness {

enum class SamplerKind { greedy, topk, nucleus, mirostat, lts, asts };

SamplerKind parse_sampler(const std::string& name);
std::string to_string(SamplerKind kind);

struct EmbedConfig {
    /// File path, "synthetic", or empty when not configured.
    std::string table;
    std::size_t dim = 16;
    std::uint64_t seed = 0;
    PoolingOptions pooling;
};

struct RelevanceConfig {
    std::string kind = "zero";  // zero | keywords
    std::vector<std::string> keywords;
};

struct ModelConfig {
    /// "synthetic:<kind>" or "file".
    std::string name = "synthetic:peaked";
    std::filesystem::path file;
    std::size_t vocab_size = 256;
    LmProfile synthetic;
};

/// Fully validated run configuration.
struct RunConfig {
    std::uint64_t seed = 0;
    std::size_t max_tokens = 50;
    std::size_t num_sequences = 1;
    std::size_t threads = 1;
    SamplerKind sampler = SamplerKind::greedy;
    ModelConfig model;
    /// Inline prompt shared by every sequence ...
    std::vector<std::string> prompt;
    /// ... or a JSON-lines file of prompts; sequence i uses line i mod count.
    std::filesystem::path prompt_file;
    std::filesystem::path output;

    LtsConfig lts;
    AstsConfig asts;
    RelevanceConfig relevance;
    EmbedConfig embed;
    std::size_t topk = 40;
    double nucleus_p = 0.9;
    MirostatState mirostat = MirostatState::with_target(3.0, 0.1);
    ZipfRange zipf;

    /// Relative paths in the document resolve against `base_dir`.
    static RunConfig from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
};

/// Reads a JSON document; throws ConfigError on I/O or syntax errors.
nlohmann::json read_config_file(const std::filesystem::path& path);

/// Sets `doc[a][b]...` for a dotted path, creating objects as needed.
void set_dotted(nlohmann::json& doc, const std::string& dotted, const nlohmann::json& value);

/// Applies DECODE_SEED from the environment, if set.
void apply_seed_override(nlohmann::json& doc);

/// Everything a run needs, built once from a RunConfig.
struct RunResources {
    std::shared_ptr<const LanguageModel> model;
    std::vector<std::vector<TokenId>> prompts;  // empty: no prompt
    std::shared_ptr<const AlignmentProvider> alignment;
    std::shared_ptr<const RelevanceProvider> relevance;

    std::span<const TokenId> prompt_for(std::size_t sequence) const {
        if (prompts.empty()) return {};
        return prompts[sequence % prompts.size()];
    }
};

/// Loads the model, embedding table and prompt. Configuration problems
/// (missing files, unknown prompt tokens, tables not covering the
/// vocabulary) raise ConfigError; malformed file contents raise InputError.
RunResources prepare(const RunConfig& cfg);

/// Fresh sampler for one sequence. `observer` receives ASTS breakdowns.
std::unique_ptr<Sampler> make_sampler(const RunConfig& cfg, const RunResources& res,
                                      AstsSampler::Observer observer = {});

}  // namespace typdec::harness
