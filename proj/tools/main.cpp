// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "harness/commands.hpp"

namespace th = typdec::harness;

int main(int argc, char** argv) {
    CLI::App app{"typdec: typicality-based decoding experiments"};
    app.require_subcommand(1);

    std::string config, audit, param, values, metric, out, generated, reference, csv, scorer;
    std::size_t reps = 1;

    auto* gen = app.add_subcommand("generate", "Generate a JSON-lines corpus from a config");
    gen->add_option("--config", config, "JSON run configuration")->required();
    gen->add_option("--audit", audit, "Write a per-step ASTS score audit (JSON lines)");

    auto* sweep = app.add_subcommand("sweep", "Sweep one config parameter and write a CSV");
    sweep->add_option("--config", config, "Base JSON run configuration")->required();
    sweep->add_option("--param", param, "Dotted config path, e.g. lts.tau_mass")->required();
    sweep->add_option("--values", values, "Comma-separated values")->required();
    sweep->add_option("--metric", metric, "ppl, rep16, rep32, rep128, zipf, diversity or diversity_sum")
        ->required();
    sweep->add_option("--reps", reps, "Replications per value")->default_val(1);
    sweep->add_option("--out", out, "Output CSV")->required();

    auto* met = app.add_subcommand("metrics", "Evaluate a corpus");
    met->add_option("--generated", generated, "Generated corpus (JSON lines)")->required();
    met->add_option("--reference", reference, "Reference corpus (JSON lines)");
    met->add_option("--out", out, "Output JSON report")->required();
    met->add_option("--csv", csv, "Also write a one-row CSV report");
    met->add_option("--config", scorer, "Score perplexity with the model of this run configuration");

    auto* gold = app.add_subcommand("golden", "Check the worked example against its reference values");
    gold->add_option("--config", config, "Take ASTS parameters from this run configuration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? th::kOk : th::kConfigError;
    }

    auto opt = [](const std::string& s) {
        return s.empty() ? std::nullopt : std::optional<std::filesystem::path>(s);
    };

    if (*gen) return th::cmd_generate(config, opt(audit), std::cout, std::cerr);
    if (*sweep) {
        int code = th::guarded(std::cerr, [&] {
            const auto spec = th::make_sweep_spec(param, values, metric, reps);
            return th::cmd_sweep(config, spec, out, std::cout, std::cerr);
        });
        return code;
    }
    if (*met) return th::cmd_metrics(generated, opt(reference), out, opt(csv), opt(scorer), std::cout, std::cerr);
    if (*gold) return th::cmd_golden(opt(config), std::cout, std::cerr);
    return th::kInternal;
}
