// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "typdec/core.hpp"
#include "typdec/metrics.hpp"

namespace typdec::harness {

/// One line of a JSON-lines corpus:
///   {"id": int, "tokens": [string], "entropy_trace": [real]}
/// On input "tokens" may also be a single whitespace-separated string and
/// "entropy_trace" may be omitted.
struct CorpusRecord {
    std::int64_t id = 0;
    std::vector<std::string> tokens;
    std::vector<double> entropy_trace;
    std::size_t line = 0;  // 1-based source line; 0 when not read from a file
};

std::string to_json_line(const CorpusRecord& rec);

void write_corpus(std::ostream& out, const std::vector<CorpusRecord>& records);
void write_corpus(const std::filesystem::path& path, const std::vector<CorpusRecord>& records);

/// Blank lines are skipped. Throws InputError("<source>:<line>: ...").
std::vector<CorpusRecord> parse_corpus(std::istream& in, const std::string& source = "<input>");
std::vector<CorpusRecord> read_corpus(const std::filesystem::path& path);

/// Sorted, de-duplicated token strings across the given corpora.
VocabPtr corpus_vocabulary(const std::vector<const std::vector<CorpusRecord>*>& corpora);

SequenceCorpus to_sequences(const std::vector<CorpusRecord>& records, const VocabPtr& vocab);

}  // namespace typdec::harness
