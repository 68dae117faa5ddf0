// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace typdec::harness {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kConfigError = 2,
    kInputError = 3,
    kGoldenFailure = 4,
    kMetricError = 5,
};

/// Invalid or inconsistent configuration. The message starts with the
/// dotted path of the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Unreadable or malformed input data (corpus files, embedding tables).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A metric is undefined on the given data (e.g. sequences too short).
class MetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace typdec::harness
