// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "harness/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <thread>

#include "harness/golden.hpp"

namespace typdec::harness {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string fmt_g(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    return out;
}

template <typename Fn>
auto metric_guard(Fn&& fn) {
    try {
        return fn();
    } catch (const std::domain_error& e) {
        throw MetricError(e.what());
    }
}

}  // namespace

ordered_json breakdown_to_json(const ScoreBreakdown& b, const Vocabulary& vocab) {
    ordered_json j;
    j["entropy"] = b.entropy;
    j["sigma"] = b.sigma;
    j["alpha"] = b.alpha;
    j["beta"] = b.beta;
    j["fallback"] = b.fallback;
    j["chosen"] = std::string(vocab.token(b.chosen));
    auto cands = ordered_json::array();
    for (const auto& c : b.candidates) {
        ordered_json cj;
        cj["token"] = std::string(vocab.token(c.token));
        cj["prob"] = c.prob;
        cj["surprisal"] = c.surprisal;
        cj["coherence"] = c.coherence;
        cj["semantic_alignment"] = c.semantic_alignment;
        cj["diversity"] = c.diversity;
        cj["composite"] = c.composite;
        cj["relevance"] = c.relevance;
        cj["repetition_penalty"] = c.repetition_penalty;
        cj["reward"] = c.reward;
        cj["adjusted_weight"] = c.adjusted_weight;
        cj["normalized"] = c.normalized;
        cj["final_prob"] = c.final_prob;
        cands.push_back(std::move(cj));
    }
    j["candidates"] = std::move(cands);
    return j;
}

std::vector<CorpusRecord> run_generation(const RunConfig& cfg, const RunResources& res, std::uint64_t seed_base,
                                         std::string* audit) {
    const std::size_t n = cfg.num_sequences;
    std::vector<CorpusRecord> records(n);
    std::vector<std::string> audits(audit != nullptr ? n : 0);
    std::vector<std::exception_ptr> errors(n);
    const Vocabulary& vocab = *res.model->vocab();

    auto run_one = [&](std::size_t i) {
        try {
            AstsSampler::Observer observer;
            std::size_t step = 0;
            if (audit != nullptr) {
                observer = [&, i](const ScoreBreakdown& b) {
                    ordered_json line;
                    line["sequence"] = i;
                    line["step"] = step++;
                    auto body = breakdown_to_json(b, vocab);
                    for (auto it = body.begin(); it != body.end(); ++it) line[it.key()] = std::move(it.value());
                    audits[i] += line.dump();
                    audits[i] += '\n';
                };
            }
            auto sampler = make_sampler(cfg, res, std::move(observer));
            auto out = generate(*res.model, *sampler, seed_base + i, cfg.max_tokens, res.prompt_for(i),
                                cfg.asts.window_w);
            CorpusRecord& rec = records[i];
            rec.id = static_cast<std::int64_t>(i);
            rec.tokens.reserve(out.tokens.size());
            for (TokenId t : out.tokens) rec.tokens.emplace_back(vocab.token(t));
            rec.entropy_trace = std::move(out.entropy_trace);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    const std::size_t threads = std::min(cfg.threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) run_one(i);
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    if (audit != nullptr) {
        for (const auto& a : audits) *audit += a;
    }
    return records;
}

const std::vector<std::string>& sweep_metrics() {
    static const std::vector<std::string> names{"ppl", "rep16", "rep32", "rep128", "zipf", "diversity",
                                                "diversity_sum"};
    return names;
}

double compute_metric(const std::string& name, const SequenceCorpus& corpus, const StepScorer& scorer,
                      const ZipfRange& zipf) {
    return metric_guard([&]() -> double {
        const auto& seqs = corpus.sequences();
        const double count = static_cast<double>(seqs.size());
        if (name == "ppl") return perplexity(corpus, scorer);
        if (name == "zipf") return zipf_coefficient(corpus, zipf);
        for (std::size_t l : kRepWindows) {
            if (name == "rep" + std::to_string(l)) {
                double total = 0.0;
                for (const auto& s : seqs) total += rep_l(s, l);
                return total / count;
            }
        }
        if (name == "diversity" || name == "diversity_sum") {
            double total = 0.0;
            for (const auto& s : seqs) total += ngram_diversity(s);
            const double mean = total / count;
            return name == "diversity" ? mean : mean * 4.0;
        }
        throw ConfigError("--metric", "unknown metric '" + name + "'");
    });
}

StepScorer model_scorer(std::shared_ptr<const LanguageModel> model) {
    return [model = std::move(model)](std::span<const TokenId> prefix, TokenId next) {
        return model->probability(prefix, next);
    };
}

StepScorer unigram_scorer(const SequenceCorpus& fit) {
    const std::size_t v = fit.vocab().size();
    std::vector<double> probs(v, 1.0);
    double total = static_cast<double>(v);
    for (const auto& s : fit.sequences()) {
        for (TokenId t : s) probs[t] += 1.0;
        total += static_cast<double>(s.size());
    }
    for (auto& p : probs) p /= total;
    return [probs = std::move(probs)](std::span<const TokenId>, TokenId next) { return probs.at(next); };
}

ordered_json report_to_json(const MetricsReport& r) {
    ordered_json j;
    j["ppl"] = r.ppl;
    j["ppl_delta"] = r.ppl_delta ? ordered_json(*r.ppl_delta) : ordered_json(nullptr);
    for (std::size_t l : kRepWindows) j["rep" + std::to_string(l)] = r.rep.at(l);
    j["zipf"] = r.zipf;
    j["zipf_delta"] = r.zipf_delta ? ordered_json(*r.zipf_delta) : ordered_json(nullptr);
    j["diversity"] = r.diversity;
    j["diversity_sum"] = r.diversity_sum;
    j["sequence_count"] = r.sequence_count;
    j["token_count"] = r.token_count;
    return j;
}

std::string report_csv_header() {
    return "ppl,ppl_delta,rep16,rep32,rep128,zipf,zipf_delta,diversity,diversity_sum,sequence_count,token_count";
}

std::string report_csv_row(const MetricsReport& r) {
    auto opt = [](const std::optional<double>& x) { return x ? fmt_g(*x) : std::string(); };
    std::string row = fmt_g(r.ppl) + "," + opt(r.ppl_delta);
    for (std::size_t l : kRepWindows) row += "," + fmt_g(r.rep.at(l));
    row += "," + fmt_g(r.zipf) + "," + opt(r.zipf_delta) + "," + fmt_g(r.diversity) + "," + fmt_g(r.diversity_sum);
    row += "," + std::to_string(r.sequence_count) + "," + std::to_string(r.token_count);
    return row;
}

SweepSpec make_sweep_spec(std::string param, const std::string& values_csv, std::string metric, std::size_t reps) {
    SweepSpec spec{std::move(param), {}, std::move(metric), reps};
    std::size_t start = 0;
    while (start <= values_csv.size()) {
        auto comma = values_csv.find(',', start);
        if (comma == std::string::npos) comma = values_csv.size();
        std::string v = values_csv.substr(start, comma - start);
        const auto b = v.find_first_not_of(" \t");
        const auto e = v.find_last_not_of(" \t");
        v = b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
        if (v.empty()) throw ConfigError("--values", "empty value in list");
        spec.values.push_back(v);
        start = comma + 1;
    }
    if (spec.param.empty()) throw ConfigError("--param", "required");
    if (spec.values.size() < 2) throw ConfigError("--values", "a sweep needs at least 2 values");
    const auto& names = sweep_metrics();
    if (std::find(names.begin(), names.end(), spec.metric) == names.end()) {
        std::string list;
        for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
        throw ConfigError("--metric", "unknown metric '" + spec.metric + "' (" + list + ")");
    }
    if (spec.reps < 1) throw ConfigError("--reps", "must be >= 1");
    return spec;
}

std::vector<SweepRow> run_sweep(const json& base_config, const std::filesystem::path& base_dir,
                                const SweepSpec& spec) {
    std::vector<SweepRow> rows;
    for (const auto& raw : spec.values) {
        json value;
        try {
            value = json::parse(raw);
        } catch (const json::parse_error&) {
            value = raw;
        }
        json doc = base_config;
        set_dotted(doc, spec.param, value);
        const RunConfig cfg = RunConfig::from_json(doc, base_dir);
        const RunResources res = prepare(cfg);
        const StepScorer scorer = model_scorer(res.model);

        std::vector<double> samples;
        for (std::size_t r = 0; r < spec.reps; ++r) {
            const auto records = run_generation(cfg, res, cfg.seed + r * cfg.num_sequences);
            samples.push_back(compute_metric(spec.metric, to_sequences(records, res.model->vocab()), scorer, cfg.zipf));
        }
        double mean = 0.0;
        for (double x : samples) mean += x;
        mean /= static_cast<double>(samples.size());
        double var = 0.0;
        for (double x : samples) var += (x - mean) * (x - mean);
        var /= static_cast<double>(samples.size());
        rows.push_back({raw, mean, std::sqrt(var)});
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "param_value,metric_mean,metric_std\n";
    for (const auto& r : rows) {
        const bool quote = r.param_value.find_first_of(",\"") != std::string::npos;
        std::string v = r.param_value;
        if (quote) {
            std::string q = "\"";
            for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
            v = q + "\"";
        }
        out << v << ',' << fmt_g(r.mean) << ',' << fmt_g(r.std) << '\n';
    }
}

int cmd_generate(const std::filesystem::path& config, const std::optional<std::filesystem::path>& audit,
                 std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        json doc = read_config_file(config);
        apply_seed_override(doc);
        const RunConfig cfg = RunConfig::from_json(doc, config.parent_path());
        if (cfg.output.empty()) throw ConfigError("output.corpus", "required for generate");
        if (audit && cfg.sampler != SamplerKind::asts) {
            throw ConfigError("--audit", "audit logs are only produced by the asts sampler");
        }
        const RunResources res = prepare(cfg);

        std::string audit_text;
        const auto records = run_generation(cfg, res, cfg.seed, audit ? &audit_text : nullptr);
        write_corpus(cfg.output, records);
        out << "wrote " << records.size() << " sequences to " << cfg.output.string() << '\n';
        if (audit) {
            auto f = open_output(*audit);
            f << audit_text;
            if (!f) throw InputError("error writing " + audit->string());
            out << "wrote audit log to " << audit->string() << '\n';
        }
        return static_cast<int>(kOk);
    });
}

int cmd_sweep(const std::filesystem::path& config, const SweepSpec& spec, const std::filesystem::path& out_csv,
              std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        json doc = read_config_file(config);
        apply_seed_override(doc);
        const auto rows = run_sweep(doc, config.parent_path(), spec);
        auto f = open_output(out_csv);
        write_sweep_csv(f, rows);
        if (!f) throw InputError("error writing " + out_csv.string());
        out << "wrote " << rows.size() << " rows to " << out_csv.string() << '\n';
        return static_cast<int>(kOk);
    });
}

int cmd_metrics(const std::filesystem::path& generated, const std::optional<std::filesystem::path>& reference,
                const std::filesystem::path& out_json, const std::optional<std::filesystem::path>& out_csv,
                const std::optional<std::filesystem::path>& scorer_config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto gen_records = read_corpus(generated);
        if (gen_records.empty()) throw InputError(generated.string() + ": no sequences");
        std::vector<CorpusRecord> ref_records;
        if (reference) {
            ref_records = read_corpus(*reference);
            if (ref_records.empty()) throw InputError(reference->string() + ": no sequences");
        }

        VocabPtr vocab;
        std::optional<StepScorer> scorer;
        ZipfRange zipf;
        if (scorer_config) {
            json doc = read_config_file(*scorer_config);
            const RunConfig cfg = RunConfig::from_json(doc, scorer_config->parent_path());
            const RunResources res = prepare(cfg);
            vocab = res.model->vocab();
            scorer = model_scorer(res.model);
            zipf = cfg.zipf;
        } else {
            vocab = corpus_vocabulary({&gen_records, reference ? &ref_records : nullptr});
            if (vocab->size() == 0) throw InputError(generated.string() + ": corpus has no tokens");
        }
        const SequenceCorpus gen = to_sequences(gen_records, vocab);
        std::optional<SequenceCorpus> ref;
        if (reference) ref.emplace(to_sequences(ref_records, vocab));
        if (!scorer) scorer = unigram_scorer(ref ? *ref : gen);

        const MetricsReport r = metric_guard([&] { return report(gen, *scorer, ref ? &*ref : nullptr, zipf); });
        {
            auto f = open_output(out_json);
            f << report_to_json(r).dump(2) << '\n';
            if (!f) throw InputError("error writing " + out_json.string());
        }
        if (out_csv) {
            auto f = open_output(*out_csv);
            f << report_csv_header() << '\n' << report_csv_row(r) << '\n';
            if (!f) throw InputError("error writing " + out_csv->string());
        }
        out << "wrote metrics for " << r.sequence_count << " sequences to " << out_json.string() << '\n';
        return static_cast<int>(kOk);
    });
}

int cmd_golden(const std::optional<std::filesystem::path>& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        AstsConfig asts;
        if (config) {
            json doc = read_config_file(*config);
            asts = RunConfig::from_json(doc, config->parent_path()).asts;
        }
        const auto start = std::chrono::steady_clock::now();
        const GoldenReport report = run_golden(asts);
        const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
        print_golden(out, report);
        out << "runtime " << fmt_g(elapsed.count()) << " ms\n";
        return static_cast<int>(report.passed() ? kOk : kGoldenFailure);
    });
}

}  // namespace typdec::harness
