// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "harness/config.hpp"
#include "harness/corpus.hpp"

namespace typdec::harness {

/// Generates cfg.num_sequences sequences on cfg.threads threads. Sequence i
/// uses seed `seed_base + i` and prompt i, so the result does not depend on
/// the thread count. When `audit` is non-null every ASTS step is appended to
/// it as one JSON line, in sequence order.
std::vector<CorpusRecord> run_generation(const RunConfig& cfg, const RunResources& res, std::uint64_t seed_base,
                                         std::string* audit = nullptr);

/// JSON form of one audit step.
nlohmann::ordered_json breakdown_to_json(const ScoreBreakdown& b, const Vocabulary& vocab);

/// Metric names accepted by sweeps: ppl, rep16, rep32, rep128, zipf,
/// diversity, diversity_sum.
const std::vector<std::string>& sweep_metrics();

/// Evaluates one named metric on a corpus. Throws ConfigError for unknown
/// names and MetricError when the metric is undefined on the data.
double compute_metric(const std::string& name, const SequenceCorpus& corpus, const StepScorer& scorer,
                      const ZipfRange& zipf);

StepScorer model_scorer(std::shared_ptr<const LanguageModel> model);

/// Add-one smoothed unigram model fit to `fit` over `vocab`.
StepScorer unigram_scorer(const SequenceCorpus& fit);

nlohmann::ordered_json report_to_json(const MetricsReport& r);
std::string report_csv_header();
std::string report_csv_row(const MetricsReport& r);

struct SweepRow {
    std::string param_value;
    double mean = 0.0;
    double std = 0.0;  // population standard deviation over replications
};

struct SweepSpec {
    std::string param;
    std::vector<std::string> values;  // raw text; parsed as JSON where possible
    std::string metric;
    std::size_t reps = 1;
};

/// Splits "a,b,c" and validates the spec (>= 2 values, known metric, reps >= 1).
SweepSpec make_sweep_spec(std::string param, const std::string& values_csv, std::string metric, std::size_t reps);

/// Replication r generates with seed `cfg.seed + r * num_sequences`.
std::vector<SweepRow> run_sweep(const nlohmann::json& base_config, const std::filesystem::path& base_dir,
                                const SweepSpec& spec);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Command entry points; they return a process exit code and report
/// failures on `err`.
int cmd_generate(const std::filesystem::path& config, const std::optional<std::filesystem::path>& audit,
                 std::ostream& out, std::ostream& err);
int cmd_sweep(const std::filesystem::path& config, const SweepSpec& spec, const std::filesystem::path& out_csv,
              std::ostream& out, std::ostream& err);
/// Perplexity is scored with the model from `scorer_config` when given,
/// otherwise with an add-one unigram model fit to the reference corpus (or
/// to the generated corpus when there is no reference).
int cmd_metrics(const std::filesystem::path& generated, const std::optional<std::filesystem::path>& reference,
                const std::filesystem::path& out_json, const std::optional<std::filesystem::path>& out_csv,
                const std::optional<std::filesystem::path>& scorer_config, std::ostream& out, std::ostream& err);
int cmd_golden(const std::optional<std::filesystem::path>& config, std::ostream& out, std::ostream& err);

/// Runs `fn`, mapping exceptions to exit codes.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn);

}  // namespace typdec::harness

#include "harness/guarded.inl"
