// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "typdec/asts.hpp"

namespace typdec::harness {

struct GoldenCheck {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct GoldenReport {
    std::vector<GoldenCheck> checks;
    bool passed() const;
};

/// Runs the seven-token worked example ("The AI system is designed to ...")
/// through asts_step twice: once with the reference composite/reward
/// scores injected and once computing them from the reference alignment,
/// relevance, diversity and repetition inputs. `cfg` is exposed so that
/// mutated configurations can be checked to fail.
GoldenReport run_golden(const AstsConfig& cfg = {});

/// Fixed-width table, one row per check, then a summary line.
void print_golden(std::ostream& out, const GoldenReport& report);

}  // namespace typdec::harness
