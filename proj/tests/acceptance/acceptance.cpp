// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion fails. `--criterion N` runs one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "../fixtures.hpp"
#include "../oracles.hpp"
#include "harness/commands.hpp"
#include "harness/golden.hpp"
#include "typdec/typdec.hpp"

using namespace typdec;
using namespace typdec::harness;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

/// Accumulates failures; the first few are kept for the report line.
class Verdict {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (ok) return;
        ++failures_;
        if (first_.size() < 3) first_.push_back(what);
    }
    std::size_t checks() const { return checks_; }
    bool ok() const { return failures_ == 0; }
    std::string failures() const {
        std::string s = std::to_string(failures_) + " failed";
        for (const auto& f : first_) s += "; " + f;
        return s;
    }

private:
    std::size_t checks_ = 0;
    std::size_t failures_ = 0;
    std::vector<std::string> first_;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

double sum(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
}

std::vector<TokenId> all_ids(const Vocabulary& v) {
    std::vector<TokenId> ids(v.size());
    for (TokenId i = 0; i < ids.size(); ++i) ids[i] = i;
    return ids;
}

std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng.uniform() * static_cast<double>(hi - lo + 1));
}

double uniform_real(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

// --- criterion 1 -------------------------------------------------------------

Outcome golden_fixture() {
    const auto report = run_golden();
    std::ostringstream table;
    print_golden(table, report);
    std::cout << table.str();
    std::size_t passed = 0;
    for (const auto& c : report.checks) passed += c.pass ? 1 : 0;
    return {report.passed(), std::to_string(passed) + "/" + std::to_string(report.checks.size()) + " golden checks"};
}

// --- criterion 2 -------------------------------------------------------------

Outcome sampler_statistics() {
    using namespace typdec::testing;
    constexpr std::size_t kDraws = 100'000;
    Verdict v;

    // ASTS with the published composite/reward scores, fresh context per draw.
    const auto dist = worked_distribution();
    const FixedScores alignment{{{analyze, 0.90}, {optimize, 0.88}, {function, 0.75}, {tasks, 0.80}}};
    const FixedScores relevance{{{analyze, 0.80}, {optimize, 0.85}, {function, 0.70}, {tasks, 0.65}}};
    const ScoreOverrides scores{
        .diversity = {},
        .repetition_penalty = {},
        .composite = {{analyze, 0.89}, {optimize, 0.85}, {function, 0.84}, {tasks, 0.84}},
        .reward = {{analyze, 0.83}, {optimize, 0.81}, {function, 0.74}, {tasks, 0.70}},
    };
    const AstsConfig cfg;
    Rng rng(20260101);
    std::vector<std::size_t> counts(dist.vocab().size(), 0);
    ScoreBreakdown reference;
    for (std::size_t i = 0; i < kDraws; ++i) {
        GenerationContext ctx(cfg.window_w);
        auto draw = asts_step(dist, ctx, cfg, alignment, relevance, rng, &scores);
        ++counts[draw.token];
        if (i == 0) reference = draw.breakdown;
    }
    const auto final = final_distribution(reference, worked_vocab());
    std::string asts_line;
    for (TokenId t = 0; t < counts.size(); ++t) {
        const double freq = static_cast<double>(counts[t]) / kDraws;
        v.expect(std::abs(freq - final[t]) <= 0.01,
                 std::string(dist.vocab().token(t)) + " freq " + fmt("%.4f", freq) + " vs " + fmt("%.4f", final[t]));
        if (final[t] > 0) asts_line += fmt(" %.4f", freq) + "/" + fmt("%.4f", final[t]);
    }

    // LTS mass mode, tau = 0.2.
    LtsConfig lts;
    lts.mode = LtsMode::mass;
    lts.tau_mass = 0.2;
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < kDraws; ++i) ++counts[lts_step(dist, lts, rng).token];
    for (TokenId t = 0; t < counts.size(); ++t) {
        if (t != tasks && t != function) v.expect(counts[t] == 0, std::string(dist.vocab().token(t)) + " drawn by LTS");
    }
    const double z = 0.165 + 0.170;
    const double f_tasks = static_cast<double>(counts[tasks]) / kDraws;
    const double f_function = static_cast<double>(counts[function]) / kDraws;
    v.expect(std::abs(f_tasks - 0.165 / z) <= 0.01, "LTS tasks " + fmt("%.4f", f_tasks));
    v.expect(std::abs(f_function - 0.170 / z) <= 0.01, "LTS function " + fmt("%.4f", f_function));

    std::string detail = "ASTS draw/target" + asts_line + "; LTS tasks " + fmt("%.4f", f_tasks) + " function " +
                         fmt("%.4f", f_function);
    if (!v.ok()) detail += "; " + v.failures();
    return {v.ok(), detail};
}

// --- criterion 3 -------------------------------------------------------------

SequenceCorpus ranked_corpus(double k, double exponent, std::size_t ranks) {
    auto vocab = Vocabulary::numbered(ranks);
    TokenSequence seq;
    for (std::size_t r = 1; r <= ranks; ++r) {
        const auto f = static_cast<std::size_t>(std::llround(k / std::pow(static_cast<double>(r), exponent)));
        seq.insert(seq.end(), f, static_cast<TokenId>(r - 1));
    }
    return SequenceCorpus(vocab, {seq});
}

Outcome metric_oracles() {
    Verdict v;
    Rng rng(3);
    for (std::size_t c = 0; c < 1000; ++c) {
        const std::size_t len = uniform_int(rng, 2, 64);
        const std::size_t alphabet = uniform_int(rng, 1, 20);
        std::vector<TokenId> seq(len);
        for (auto& t : seq) t = static_cast<TokenId>(uniform_int(rng, 0, alphabet - 1));
        for (std::size_t l : {1, 2, 3, 4, 8, 16, 32, 64, 128}) {
            v.expect(rep_l(seq, l) == oracle::rep_l(seq, l), "rep_l case " + std::to_string(c));
        }
        if (len >= 4) v.expect(ngram_diversity(seq) == oracle::ngram_diversity(seq), "diversity case " + std::to_string(c));
    }
    const std::size_t oracle_checks = v.checks();

    double worst_ppl = 0.0;
    for (std::size_t n = 2; n <= 1024; ++n) {
        auto vocab = Vocabulary::numbered(n);
        TokenSequence seq(32);
        for (auto& t : seq) t = static_cast<TokenId>(uniform_int(rng, 0, n - 1));
        const double p = 1.0 / static_cast<double>(n);
        const double ppl = perplexity(SequenceCorpus(vocab, {seq}), [p](auto, auto) { return p; });
        worst_ppl = std::max(worst_ppl, std::abs(ppl - static_cast<double>(n)));
        v.expect(std::abs(ppl - static_cast<double>(n)) <= 1e-9, "ppl n=" + std::to_string(n));
    }

    const double z1 = zipf_coefficient(ranked_corpus(1e5, 1.0, 100));
    const double z2 = zipf_coefficient(ranked_corpus(1e6, 2.0, 100));
    v.expect(std::abs(z1 - 1.0) <= 0.02, "zipf 1/r " + fmt("%.5f", z1));
    v.expect(std::abs(z2 - 2.0) <= 0.05, "zipf 1/r^2 " + fmt("%.5f", z2));

    std::string detail = std::to_string(oracle_checks) + " oracle comparisons exact; max |ppl-n| " +
                         fmt("%.2e", worst_ppl) + "; zipf " + fmt("%.5f", z1) + ", " + fmt("%.5f", z2);
    if (!v.ok()) detail += "; " + v.failures();
    return {v.ok(), detail};
}

// --- criterion 4 -------------------------------------------------------------

struct RandomCase {
    VocabPtr vocab;
    TokenDistribution dist;
    GenerationContext ctx;
    AstsConfig cfg;
    FixedScores alignment;
    FixedScores relevance;
};

RandomCase random_case(Rng& rng, bool allow_zeros = true) {
    auto vocab = Vocabulary::numbered(uniform_int(rng, 2, 64));
    auto dist = typdec::testing::random_distribution(vocab, rng, allow_zeros);
    AstsConfig cfg;
    cfg.k1 = uniform_real(rng, 0.0, 3.0);
    cfg.k2 = uniform_real(rng, 0.0, 3.0);
    cfg.lambda1 = rng.uniform();
    cfg.lambda2 = rng.uniform();
    cfg.lambda3 = rng.uniform();
    cfg.mu1 = rng.uniform();
    cfg.mu2 = rng.uniform();
    cfg.mu3 = rng.uniform();
    cfg.temperature = std::exp(uniform_real(rng, std::log(0.1), std::log(5.0)));
    cfg.window_w = uniform_int(rng, 1, 12);
    cfg.eps_div = uniform_real(rng, 0.1, 2.0);
    cfg.tau_mass = uniform_real(rng, 0.01, 1.0);
    cfg.candidates = rng.uniform() < 0.5 ? CandidateMode::dynamic_band : CandidateMode::mass;
    cfg.adjust_form = rng.uniform() < 0.5 ? AdjustForm::example : AdjustForm::eq13;

    GenerationContext ctx(cfg.window_w);
    const std::size_t history = uniform_int(rng, 0, 40);
    for (std::size_t i = 0; i < history; ++i) {
        ctx.record(static_cast<TokenId>(uniform_int(rng, 0, vocab->size() - 1)), uniform_real(rng, 0.0, 4.0));
    }
    std::map<TokenId, double> sa, rel;
    for (TokenId t = 0; t < vocab->size(); ++t) {
        sa[t] = uniform_real(rng, -1.0, 1.0);
        rel[t] = rng.uniform();
    }
    return {vocab, std::move(dist), std::move(ctx), cfg, FixedScores(sa), FixedScores(rel)};
}

bool sums_to_one(std::span<const double> xs) { return std::abs(sum(xs) - 1.0) <= 1e-9; }

Outcome property_suites() {
    constexpr std::size_t kCases = 1000;
    Verdict v;
    Rng rng(4);
    std::vector<std::string> suites;

    // Normalization after every pipeline stage.
    for (std::size_t c = 0; c < kCases; ++c) {
        auto rc = random_case(rng);
        const auto tag = " (case " + std::to_string(c) + ")";
        const double h = entropy(rc.dist);
        v.expect(sums_to_one(rc.dist.probs()), "input" + tag);
        const double eps = uniform_real(rng, 0.0, 2.0);
        v.expect(sums_to_one(typical_set_band(rc.dist, h - eps, h + eps).renormalized.probs()), "band" + tag);
        v.expect(sums_to_one(typical_set_mass(rc.dist, rc.cfg.tau_mass).renormalized.probs()), "mass" + tag);
        const auto b = asts_score(rc.dist, rc.ctx, rc.cfg, rc.alignment, rc.relevance);
        std::vector<double> normalized, final;
        for (const auto& cand : b.candidates) {
            normalized.push_back(cand.normalized);
            final.push_back(cand.final_prob);
        }
        v.expect(sums_to_one(normalized), "asts normalized" + tag);
        v.expect(sums_to_one(final), "asts final" + tag);
        v.expect(sums_to_one(final_distribution(b, rc.vocab).probs()), "final distribution" + tag);
        const auto ids = all_ids(*rc.vocab);
        v.expect(sums_to_one(temperature_scale(rc.dist, rc.cfg.temperature, ids).probs()), "temperature" + tag);
    }
    suites.push_back("normalization");

    // Temperature: identity at T = 1, rank preservation for T > 0.
    for (std::size_t c = 0; c < kCases; ++c) {
        auto rc = random_case(rng);
        const auto ids = all_ids(*rc.vocab);
        const auto tag = " (case " + std::to_string(c) + ")";
        const auto same = temperature_scale(rc.dist, 1.0, ids);
        bool identity = true;
        for (TokenId t : ids) identity = identity && std::abs(same[t] - rc.dist[t]) <= 1e-12;
        v.expect(identity, "T=1 identity" + tag);

        const double temp = std::exp(uniform_real(rng, std::log(0.05), std::log(20.0)));
        const auto scaled = temperature_scale(rc.dist, temp, ids);
        bool ranks = true;
        for (TokenId i : ids) {
            for (TokenId j : ids) {
                if (rc.dist[i] > rc.dist[j]) ranks = ranks && scaled[i] >= scaled[j];
                if (rc.dist[i] > rc.dist[j] && scaled[j] > 0.0) ranks = ranks && scaled[i] > scaled[j];
                if (rc.dist[i] == rc.dist[j]) ranks = ranks && scaled[i] == scaled[j];
            }
        }
        v.expect(ranks, "rank preservation T=" + fmt("%.3f", temp) + tag);
    }
    suites.push_back("temperature");

    // Set monotonicity: wider band / larger mass never drops members.
    for (std::size_t c = 0; c < kCases; ++c) {
        auto rc = random_case(rng);
        const auto tag = " (case " + std::to_string(c) + ")";
        const double h = entropy(rc.dist);
        double e1 = uniform_real(rng, 0.0, 2.0), e2 = uniform_real(rng, 0.0, 2.0);
        if (e1 > e2) std::swap(e1, e2);
        const auto narrow = typical_set_band(rc.dist, h - e1, h + e1).members;
        const auto wide = typical_set_band(rc.dist, h - e2, h + e2).members;
        v.expect(std::includes(wide.begin(), wide.end(), narrow.begin(), narrow.end()), "band monotone" + tag);

        double t1 = uniform_real(rng, 0.001, 1.0), t2 = uniform_real(rng, 0.001, 1.0);
        if (t1 > t2) std::swap(t1, t2);
        const auto small = typical_set_mass(rc.dist, t1).members;
        const auto large = typical_set_mass(rc.dist, t2).members;
        v.expect(std::includes(large.begin(), large.end(), small.begin(), small.end()), "mass monotone" + tag);
    }
    suites.push_back("set monotonicity");

    // Exp-shift invariance: a constant added to every exponent cancels in
    // the normalization.
    for (std::size_t c = 0; c < kCases; ++c) {
        auto rc = random_case(rng);
        const auto tag = " (case " + std::to_string(c) + ")";
        const auto base = asts_score(rc.dist, rc.ctx, rc.cfg, rc.alignment, rc.relevance);
        const double shift_s = uniform_real(rng, -5.0, 5.0);
        const double shift_r = uniform_real(rng, -5.0, 5.0);
        ScoreOverrides shifted{.diversity = {}, .repetition_penalty = {}, .composite = {}, .reward = {}};
        for (const auto& cand : base.candidates) {
            const bool eq13 = rc.cfg.adjust_form == AdjustForm::eq13;
            shifted.composite[cand.token] = eq13 ? cand.composite : cand.composite + shift_s;
            shifted.reward[cand.token] = cand.reward + shift_r;
        }
        const auto moved = asts_score(rc.dist, rc.ctx, rc.cfg, rc.alignment, rc.relevance, &shifted);
        bool same = moved.candidates.size() == base.candidates.size();
        for (std::size_t i = 0; same && i < base.candidates.size(); ++i) {
            same = std::abs(moved.candidates[i].normalized - base.candidates[i].normalized) <= 1e-9 &&
                   std::abs(moved.candidates[i].final_prob - base.candidates[i].final_prob) <= 1e-9;
        }
        v.expect(same, "exp-shift invariance" + tag);
    }
    suites.push_back("exp-shift invariance");

    // Repetition monotonicity: one more occurrence of a token never raises
    // its adjusted weight.
    for (std::size_t c = 0; c < kCases; ++c) {
        auto rc = random_case(rng, false);
        rc.cfg.k1 = rc.cfg.k2 = 1e6;
        rc.cfg.candidates = CandidateMode::dynamic_band;
        const auto tag = " (case " + std::to_string(c) + ")";
        const auto x = static_cast<TokenId>(uniform_int(rng, 0, rc.vocab->size() - 1));
        double previous = asts_score(rc.dist, rc.ctx, rc.cfg, rc.alignment, rc.relevance).find(x)->adjusted_weight;
        bool monotone = true;
        for (int rep = 0; rep < 5; ++rep) {
            rc.ctx.push_token(x);
            const double w =
                asts_score(rc.dist, rc.ctx, rc.cfg, rc.alignment, rc.relevance).find(x)->adjusted_weight;
            monotone = monotone && w <= previous * (1.0 + 1e-12);
            previous = w;
        }
        v.expect(monotone, "repetition monotonicity" + tag);
    }
    suites.push_back("repetition monotonicity");

    // Full-run determinism: repeat runs and serial vs parallel runs give
    // byte-identical corpora.
    const char* samplers[] = {"greedy", "topk", "nucleus", "mirostat", "lts", "asts"};
    const char* kinds[] = {"peaked", "flat", "mixed", "loop_prone"};
    for (std::size_t c = 0; c < kCases; ++c) {
        json doc{{"seed", rng.next_u64() >> 1},
                 {"max_tokens", uniform_int(rng, 1, 20)},
                 {"num_sequences", uniform_int(rng, 1, 6)},
                 {"sampler", samplers[c % 6]},
                 {"model",
                  {{"name", std::string("synthetic:") + kinds[uniform_int(rng, 0, 3)]},
                   {"vocab_size", uniform_int(rng, 2, 48)},
                   {"synthetic", {{"seed", rng.next_u64() >> 1}, {"loop_gamma", uniform_real(rng, 1.0, 4.0)}}}}},
                 {"embed", {{"table", "synthetic"}, {"dim", 4}}}};
        auto serial_cfg = RunConfig::from_json(doc);
        const auto res = prepare(serial_cfg);
        auto dump = [](const std::vector<CorpusRecord>& recs) {
            std::ostringstream out;
            write_corpus(out, recs);
            return out.str();
        };
        std::string audit_a, audit_b;
        const auto first = dump(run_generation(serial_cfg, res, serial_cfg.seed, &audit_a));
        const auto again = dump(run_generation(serial_cfg, res, serial_cfg.seed));
        auto parallel_cfg = serial_cfg;
        parallel_cfg.threads = 4;
        const auto parallel = dump(run_generation(parallel_cfg, res, parallel_cfg.seed, &audit_b));
        v.expect(first == again && first == parallel && audit_a == audit_b,
                 std::string("determinism ") + samplers[c % 6] + " (case " + std::to_string(c) + ")");
    }
    suites.push_back("determinism");

    std::string detail = std::to_string(suites.size()) + " suites x " + std::to_string(kCases) + " cases, " +
                         std::to_string(v.checks()) + " checks";
    if (!v.ok()) detail += "; " + v.failures();
    return {v.ok(), detail};
}

// --- criterion 5 -------------------------------------------------------------

json mechanism_config(double mu3) {
    return json{{"seed", 1},
                {"max_tokens", 200},
                {"num_sequences", 50},
                {"threads", std::max(1u, std::thread::hardware_concurrency())},
                {"sampler", "asts"},
                {"model",
                 {{"name", "synthetic:loop_prone"}, {"vocab_size", 256}, {"synthetic", {{"loop_gamma", 3.0}, {"seed", 0}}}}},
                {"asts", {{"mu3", mu3}}},
                {"embed", {{"table", "synthetic"}, {"dim", 16}, {"seed", 0}}}};
}

std::vector<double> per_sequence_rep32(const json& doc) {
    const auto cfg = RunConfig::from_json(doc);
    const auto res = prepare(cfg);
    const auto corpus = to_sequences(run_generation(cfg, res, cfg.seed), res.model->vocab());
    std::vector<double> out;
    for (const auto& s : corpus.sequences()) out.push_back(rep_l(s, 32));
    return out;
}

double mean(std::span<const double> xs) { return sum(xs) / static_cast<double>(xs.size()); }

double population_std(std::span<const double> xs) {
    const double m = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(xs.size()));
}

Outcome mechanism_experiment(const std::filesystem::path& out_dir) {
    const auto with_penalty = per_sequence_rep32(mechanism_config(0.5));
    const auto ablation = per_sequence_rep32(mechanism_config(0.0));
    const double m_pen = mean(with_penalty);
    const double m_abl = mean(ablation);
    std::vector<double> diff(with_penalty.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = with_penalty[i] - ablation[i];
    const double se = population_std(diff) * std::sqrt(static_cast<double>(diff.size())) /
                      std::sqrt(static_cast<double>(diff.size() * (diff.size() - 1)));

    // tau sweeps (logged, not gated).
    const std::string taus = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0";
    json lts_doc = mechanism_config(0.5);
    lts_doc["sampler"] = "lts";
    lts_doc["lts"] = {{"mode", "mass"}};
    json asts_doc = mechanism_config(0.5);
    asts_doc["asts"]["candidates"] = "mass";
    std::filesystem::create_directories(out_dir);
    auto sweep = [&](const json& doc, const std::string& param, const std::string& file) {
        const auto rows = run_sweep(doc, {}, make_sweep_spec(param, taus, "rep32", 1));
        std::ofstream out(out_dir / file, std::ios::binary);
        write_sweep_csv(out, rows);
        std::vector<double> means;
        for (const auto& r : rows) means.push_back(r.mean);
        return population_std(means);
    };
    const double lts_std = sweep(lts_doc, "lts.tau_mass", "sweep_lts_tau_rep32.csv");
    const double asts_std = sweep(asts_doc, "asts.tau_mass", "sweep_asts_tau_rep32.csv");

    std::string detail = "mean rep32 mu3=0.5 " + fmt("%.4f", m_pen) + " vs mu3=0 " + fmt("%.4f", m_abl) +
                         " (diff " + fmt("%+.4f", m_pen - m_abl) + ", paired SE " + fmt("%.4f", se) +
                         "); tau-sweep std of mean rep32: ASTS " + fmt("%.4f", asts_std) + ", LTS " +
                         fmt("%.4f", lts_std) + (asts_std < lts_std ? " (ASTS less sensitive)" : " (ASTS not less sensitive)") +
                         "; CSVs in " + out_dir.string();
    return {m_pen < m_abl, detail};
}

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"typdec acceptance criteria"};
    std::vector<int> only;
    std::string out_dir = "acceptance_out";
    app.add_option("--criterion", only, "Run only these criteria (1-5)");
    app.add_option("--out-dir", out_dir, "Directory for sweep CSVs");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "golden worked example", 1.0, golden_fixture},
        {2, "sampler statistics", 5.0, sampler_statistics},
        {3, "metric oracles", 30.0, metric_oracles},
        {4, "property suites", 60.0, property_suites},
        {5, "mechanism experiment", 300.0, [&] { return mechanism_experiment(out_dir); }},
    };

    bool all = true;
    for (const auto& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.limit_seconds;
        const bool pass = o.pass && in_time;
        all = all && pass;
        std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << " [PRIMARY] " << c.name << ": " << o.detail
                  << " | " << fmt("%.3f", secs) << " s (limit " << fmt("%.0f", c.limit_seconds) << " s"
                  << (in_time ? "" : ", EXCEEDED") << ")" << std::endl;
    }
    return all ? 0 : 1;
}
