// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "harness/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "harness/errors.hpp"

namespace typdec::harness {

using nlohmann::json;

std::string to_json_line(const CorpusRecord& rec) {
    nlohmann::ordered_json j;
    j["id"] = rec.id;
    j["tokens"] = rec.tokens;
    j["entropy_trace"] = rec.entropy_trace;
    return j.dump();
}

void write_corpus(std::ostream& out, const std::vector<CorpusRecord>& records) {
    for (const auto& rec : records) out << to_json_line(rec) << '\n';
}

void write_corpus(const std::filesystem::path& path, const std::vector<CorpusRecord>& records) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    write_corpus(out, records);
    if (!out) throw InputError("error writing " + path.string());
}

namespace {

std::vector<std::string> split_whitespace(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

}  // namespace

std::vector<CorpusRecord> parse_corpus(std::istream& in, const std::string& source) {
    std::vector<CorpusRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const auto fail = [&](const std::string& msg) {
            throw InputError(source + ":" + std::to_string(lineno) + ": " + msg);
        };
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            fail(std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object()) fail("expected a JSON object");

        CorpusRecord rec;
        rec.line = lineno;
        rec.id = static_cast<std::int64_t>(out.size());
        if (j.contains("id")) {
            if (!j["id"].is_number_integer()) fail("\"id\" must be an integer");
            rec.id = j["id"].get<std::int64_t>();
        }
        if (!j.contains("tokens")) fail("missing \"tokens\"");
        const auto& toks = j["tokens"];
        if (toks.is_string()) {
            rec.tokens = split_whitespace(toks.get<std::string>());
        } else if (toks.is_array()) {
            for (const auto& t : toks) {
                if (!t.is_string()) fail("\"tokens\" must contain strings");
                rec.tokens.push_back(t.get<std::string>());
            }
        } else {
            fail("\"tokens\" must be an array of strings or a string");
        }
        if (j.contains("entropy_trace")) {
            const auto& tr = j["entropy_trace"];
            if (!tr.is_array()) fail("\"entropy_trace\" must be an array of numbers");
            for (const auto& v : tr) {
                if (!v.is_number()) fail("\"entropy_trace\" must be an array of numbers");
                rec.entropy_trace.push_back(v.get<double>());
            }
        }
        out.push_back(std::move(rec));
    }
    if (in.bad()) throw InputError(source + ": read error");
    return out;
}

std::vector<CorpusRecord> read_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    return parse_corpus(in, path.string());
}

VocabPtr corpus_vocabulary(const std::vector<const std::vector<CorpusRecord>*>& corpora) {
    std::set<std::string> seen;
    for (const auto* corpus : corpora) {
        if (corpus == nullptr) continue;
        for (const auto& rec : *corpus) seen.insert(rec.tokens.begin(), rec.tokens.end());
    }
    return std::make_shared<const Vocabulary>(std::vector<std::string>(seen.begin(), seen.end()));
}

SequenceCorpus to_sequences(const std::vector<CorpusRecord>& records, const VocabPtr& vocab) {
    std::vector<TokenSequence> seqs;
    seqs.reserve(records.size());
    for (const auto& rec : records) {
        TokenSequence seq;
        seq.reserve(rec.tokens.size());
        for (const auto& tok : rec.tokens) {
            auto id = vocab->find(tok);
            if (!id) throw InputError("token '" + tok + "' is not in the vocabulary");
            seq.push_back(*id);
        }
        seqs.push_back(std::move(seq));
    }
    return SequenceCorpus(vocab, std::move(seqs));
}

}  // namespace typdec::harness
