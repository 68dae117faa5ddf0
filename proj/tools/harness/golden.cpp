// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "harness/golden.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>

#include "typdec/context.hpp"
#include "typdec/providers.hpp"
#include "typdec/rng.hpp"

namespace typdec::harness {

namespace {

enum : TokenId { analyze = 0, optimize, function, tasks };

VocabPtr fixture_vocab() {
    return std::make_shared<const Vocabulary>(std::vector<std::string>{
        "analyze", "optimize", "function", "tasks", "data", "errors", "solve"});
}

std::string fmt(double x, int digits = 4) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string fmt_list(const std::vector<double>& xs, int digits = 4) {
    std::string s = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + fmt(xs[i], digits);
    return s + ")";
}

class Checker {
public:
    explicit Checker(GoldenReport& r) : r_(r) {}

    void scalar(const std::string& name, double expected, double actual, double tol) {
        r_.checks.push_back({name, fmt(expected, 2) + " +/- " + fmt(tol, 3), fmt(actual),
                             std::abs(actual - expected) <= tol});
    }

    void vector(const std::string& name, const std::vector<double>& expected, const std::vector<double>& actual,
                double tol) {
        bool ok = expected.size() == actual.size();
        for (std::size_t i = 0; ok && i < expected.size(); ++i) ok = std::abs(actual[i] - expected[i]) <= tol;
        r_.checks.push_back({name, fmt_list(expected, 2) + " +/- " + fmt(tol, 3), fmt_list(actual), ok});
    }

    void set(const std::string& name, const std::vector<std::string>& expected,
             const std::vector<std::string>& actual) {
        auto show = [](const std::vector<std::string>& v) {
            std::string s = "{";
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
            return s + "}";
        };
        r_.checks.push_back({name, show(expected), show(actual), expected == actual});
    }

private:
    GoldenReport& r_;
};

std::vector<double> column(const ScoreBreakdown& b, double CandidateScore::*field) {
    std::vector<double> out;
    for (const auto& c : b.candidates) out.push_back(c.*field);
    return out;
}

}  // namespace

bool GoldenReport::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

GoldenReport run_golden(const AstsConfig& cfg) {
    const auto vocab = fixture_vocab();
    const TokenDistribution dist(vocab, {0.175, 0.172, 0.170, 0.165, 0.120, 0.100, 0.098});

    // Reference inputs: alignment, relevance, diversity and repetition per candidate.
    const FixedScores alignment{{{analyze, 0.90}, {optimize, 0.88}, {function, 0.75}, {tasks, 0.80}}};
    const FixedScores relevance{{{analyze, 0.80}, {optimize, 0.85}, {function, 0.70}, {tasks, 0.65}}};
    const ScoreOverrides table_inputs{
        .diversity = {{analyze, 1.00}, {optimize, 0.80}, {function, 1.00}, {tasks, 0.85}},
        .repetition_penalty = {{analyze, 0.10}, {optimize, 0.15}, {function, 0.05}, {tasks, 0.20}},
        .composite = {},
        .reward = {},
    };
    // Reference composite and reward values, rounded to two places.
    const ScoreOverrides table_scores{
        .diversity = {},
        .repetition_penalty = {},
        .composite = {{analyze, 0.89}, {optimize, 0.85}, {function, 0.84}, {tasks, 0.84}},
        .reward = {{analyze, 0.83}, {optimize, 0.81}, {function, 0.74}, {tasks, 0.70}},
    };

    GoldenReport report;
    Checker check(report);

    GenerationContext ctx_injected(cfg.window_w);
    Rng rng_injected(1);
    const auto injected =
        asts_step(dist, ctx_injected, cfg, alignment, relevance, rng_injected, &table_scores).breakdown;

    GenerationContext ctx_formula(cfg.window_w);
    Rng rng_formula(1);
    const auto formula =
        asts_step(dist, ctx_formula, cfg, alignment, relevance, rng_formula, &table_inputs).breakdown;

    check.scalar("entropy H", 1.92, formula.entropy, 0.005);
    check.scalar("threshold alpha", 1.74, formula.alpha, 0.005);
    check.scalar("threshold beta", 2.10, formula.beta, 0.005);

    std::vector<std::string> members;
    for (const auto& c : formula.candidates) members.push_back(std::string(vocab->token(c.token)));
    check.set("typical set R", {"analyze", "optimize", "function", "tasks"}, members);

    check.vector("coherence", {0.82, 0.84, 0.85, 0.88}, column(formula, &CandidateScore::coherence), 0.005);
    check.vector("composite S", {0.89, 0.85, 0.84, 0.84}, column(formula, &CandidateScore::composite), 0.005);
    check.vector("final P (injected scores)", {0.28, 0.26, 0.24, 0.22}, column(injected, &CandidateScore::final_prob),
                 0.01);
    check.vector("final P (computed scores)", {0.28, 0.26, 0.24, 0.22}, column(formula, &CandidateScore::final_prob),
                 0.015);
    return report;
}

void print_golden(std::ostream& out, const GoldenReport& report) {
    std::size_t w_name = 5, w_exp = 8;
    for (const auto& c : report.checks) {
        w_name = std::max(w_name, c.name.size());
        w_exp = std::max(w_exp, c.expected.size());
    }
    out << std::left << std::setw(6) << "status" << "  " << std::setw(static_cast<int>(w_name)) << "check" << "  "
        << std::setw(static_cast<int>(w_exp)) << "expected" << "  actual\n";
    std::size_t failed = 0;
    for (const auto& c : report.checks) {
        if (!c.pass) ++failed;
        out << std::left << std::setw(6) << (c.pass ? "PASS" : "FAIL") << "  " << std::setw(static_cast<int>(w_name))
            << c.name << "  " << std::setw(static_cast<int>(w_exp)) << c.expected << "  " << c.actual << '\n';
    }
    out << (report.checks.size() - failed) << "/" << report.checks.size() << " checks passed\n";
}

}  // namespace typdec::harness
