// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "harness/config.hpp"
#include "harness/corpus.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

namespace typdec::harness {

using nlohmann::json;

namespace {

/// View of one JSON object that remembers its dotted path and which keys
/// were consumed, so leftovers can be reported as unknown.
class Section {
public:
    Section(const json* node, std::string path) : node_(node), path_(std::move(path)) {
        if (node_ != nullptr && !node_->is_object()) throw ConfigError(display(), "expected an object");
    }

    bool present() const { return node_ != nullptr; }

    bool has(const std::string& key) const { return node_ != nullptr && node_->contains(key); }

    Section child(const std::string& key) {
        seen_.insert(key);
        if (!has(key)) return Section(nullptr, join(key));
        return Section(&node_->at(key), join(key));
    }

    const json* raw(const std::string& key) {
        seen_.insert(key);
        return has(key) ? &node_->at(key) : nullptr;
    }

    template <typename T>
    T get(const std::string& key, T fallback) {
        seen_.insert(key);
        if (!has(key)) return fallback;
        return read<T>(key);
    }

    template <typename T>
    std::optional<T> maybe(const std::string& key) {
        seen_.insert(key);
        if (!has(key)) return std::nullopt;
        return read<T>(key);
    }

    void reject_unknown() const {
        if (node_ == nullptr) return;
        for (const auto& [key, value] : node_->items()) {
            if (!seen_.count(key)) throw ConfigError(join(key), "unknown key");
        }
    }

    std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    std::string display() const { return path_.empty() ? "<root>" : path_; }

    template <typename T>
    T read(const std::string& key) {
        const json& v = node_->at(key);
        try {
            if constexpr (std::is_same_v<T, double>) {
                if (!v.is_number()) throw ConfigError(join(key), "expected a number");
            } else if constexpr (std::is_integral_v<T>) {
                if (!v.is_number_integer()) throw ConfigError(join(key), "expected an integer");
                if constexpr (std::is_unsigned_v<T>) {
                    if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
                        throw ConfigError(join(key), "must be >= 0");
                    }
                }
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (!v.is_string()) throw ConfigError(join(key), "expected a string");
            }
            return v.get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(join(key), e.what());
        }
    }

    const json* node_;
    std::string path_;
    std::set<std::string> seen_;
};

template <typename Fn>
void checked(const std::string& path, Fn&& fn) {
    try {
        fn();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
}

std::vector<std::string> string_list(const json& doc, const std::string& path) {
    if (!doc.is_array()) throw ConfigError(path, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& v : doc) {
        if (!v.is_string()) throw ConfigError(path, "expected an array of strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    if (path.is_relative() && !base.empty()) return base / path;
    return path;
}

}  // namespace

SamplerKind parse_sampler(const std::string& name) {
    if (name == "greedy") return SamplerKind::greedy;
    if (name == "topk") return SamplerKind::topk;
    if (name == "nucleus") return SamplerKind::nucleus;
    if (name == "mirostat") return SamplerKind::mirostat;
    if (name == "lts") return SamplerKind::lts;
    if (name == "asts") return SamplerKind::asts;
    throw ConfigError("sampler", "unknown sampler '" + name + "' (greedy, topk, nucleus, mirostat, lts, asts)");
}

std::string to_string(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::greedy: return "greedy";
        case SamplerKind::topk: return "topk";
        case SamplerKind::nucleus: return "nucleus";
        case SamplerKind::mirostat: return "mirostat";
        case SamplerKind::lts: return "lts";
        case SamplerKind::asts: return "asts";
    }
    return "?";
}

RunConfig RunConfig::from_json(const json& doc, const std::filesystem::path& base_dir) {
    RunConfig cfg;
    Section root(&doc, "");
    cfg.seed = root.get<std::uint64_t>("seed", 0);
    cfg.max_tokens = root.get<std::size_t>("max_tokens", cfg.max_tokens);
    if (cfg.max_tokens < 1) throw ConfigError("max_tokens", "must be >= 1");
    cfg.num_sequences = root.get<std::size_t>("num_sequences", cfg.num_sequences);
    if (cfg.num_sequences < 1) throw ConfigError("num_sequences", "must be >= 1");
    cfg.threads = root.get<std::size_t>("threads", cfg.threads);
    if (cfg.threads < 1) throw ConfigError("threads", "must be >= 1");
    cfg.sampler = parse_sampler(root.get<std::string>("sampler", "greedy"));

    {
        auto model = root.child("model");
        cfg.model.name = model.get<std::string>("name", cfg.model.name);
        cfg.model.vocab_size = model.get<std::size_t>("vocab_size", cfg.model.vocab_size);
        if (cfg.model.vocab_size < 1) throw ConfigError("model.vocab_size", "must be >= 1");
        if (auto file = model.maybe<std::string>("file")) cfg.model.file = resolve(base_dir, *file);
        auto syn = model.child("synthetic");
        auto& p = cfg.model.synthetic;
        p.base_temperature = syn.get<double>("base_temperature", p.base_temperature);
        p.loop_gamma = syn.get<double>("loop_gamma", p.loop_gamma);
        p.recency_window = syn.get<std::size_t>("recency_window", p.recency_window);
        p.seed = syn.get<std::uint64_t>("seed", p.seed);
        syn.reject_unknown();
        model.reject_unknown();

        const std::string& name = cfg.model.name;
        if (name.rfind("synthetic:", 0) == 0) {
            checked("model.name", [&] { p.kind = parse_lm_kind(name.substr(10)); });
            checked("model.synthetic", [&] { p.validate(); });
        } else if (name == "file") {
            if (cfg.model.file.empty()) throw ConfigError("model.file", "required when model.name is \"file\"");
            if (!std::filesystem::exists(cfg.model.file)) {
                throw ConfigError("model.file", "no such file: " + cfg.model.file.string());
            }
        } else {
            throw ConfigError("model.name", "expected \"synthetic:<kind>\" or \"file\", got '" + name + "'");
        }
    }

    {
        auto prompt = root.child("prompt");
        if (const json* toks = prompt.raw("tokens")) cfg.prompt = string_list(*toks, "prompt.tokens");
        if (auto file = prompt.maybe<std::string>("file")) {
            if (!cfg.prompt.empty()) throw ConfigError("prompt", "set either prompt.tokens or prompt.file, not both");
            cfg.prompt_file = resolve(base_dir, *file);
            if (!std::filesystem::exists(cfg.prompt_file)) {
                throw ConfigError("prompt.file", "no such file: " + cfg.prompt_file.string());
            }
        }
        prompt.reject_unknown();
    }

    {
        auto output = root.child("output");
        if (auto corpus = output.maybe<std::string>("corpus")) cfg.output = resolve(base_dir, *corpus);
        output.reject_unknown();
    }

    {
        auto lts = root.child("lts");
        const auto mode = lts.get<std::string>("mode", "mass");
        if (mode == "band") {
            cfg.lts.mode = LtsMode::band;
        } else if (mode == "mass") {
            cfg.lts.mode = LtsMode::mass;
        } else {
            throw ConfigError("lts.mode", "expected \"band\" or \"mass\"");
        }
        cfg.lts.epsilon = lts.get<double>("epsilon", cfg.lts.epsilon);
        cfg.lts.tau_mass = lts.get<double>("tau_mass", cfg.lts.tau_mass);
        lts.reject_unknown();
        checked("lts", [&] { cfg.lts.validate(); });
    }

    {
        auto a = root.child("asts");
        auto& c = cfg.asts;
        c.k1 = a.get<double>("k1", c.k1);
        c.k2 = a.get<double>("k2", c.k2);
        c.lambda1 = a.get<double>("lambda1", c.lambda1);
        c.lambda2 = a.get<double>("lambda2", c.lambda2);
        c.lambda3 = a.get<double>("lambda3", c.lambda3);
        c.mu1 = a.get<double>("mu1", c.mu1);
        c.mu2 = a.get<double>("mu2", c.mu2);
        c.mu3 = a.get<double>("mu3", c.mu3);
        c.temperature = a.get<double>("temperature", c.temperature);
        c.window_w = a.get<std::size_t>("window_w", c.window_w);
        c.eps_div = a.get<double>("eps_div", c.eps_div);
        c.sigma_prior = a.get<double>("sigma_prior", c.sigma_prior);
        c.tau_mass = a.get<double>("tau_mass", c.tau_mass);
        const auto form = a.get<std::string>("adjust_form", "example");
        if (form == "example") {
            c.adjust_form = AdjustForm::example;
        } else if (form == "eq13") {
            c.adjust_form = AdjustForm::eq13;
        } else {
            throw ConfigError("asts.adjust_form", "expected \"example\" or \"eq13\"");
        }
        const auto cands = a.get<std::string>("candidates", "band");
        if (cands == "band") {
            c.candidates = CandidateMode::dynamic_band;
        } else if (cands == "mass") {
            c.candidates = CandidateMode::mass;
        } else {
            throw ConfigError("asts.candidates", "expected \"band\" or \"mass\"");
        }
        cfg.relevance.kind = a.get<std::string>("relevance", cfg.relevance.kind);
        if (cfg.relevance.kind != "zero" && cfg.relevance.kind != "keywords") {
            throw ConfigError("asts.relevance", "expected \"zero\" or \"keywords\"");
        }
        if (const json* kw = a.raw("keywords")) cfg.relevance.keywords = string_list(*kw, "asts.keywords");
        a.reject_unknown();
        checked("asts", [&] { c.validate(); });
    }

    {
        auto e = root.child("embed");
        cfg.embed.table = e.get<std::string>("table", "");
        cfg.embed.dim = e.get<std::size_t>("dim", cfg.embed.dim);
        if (cfg.embed.dim < 1) throw ConfigError("embed.dim", "must be >= 1");
        cfg.embed.seed = e.get<std::uint64_t>("seed", cfg.embed.seed);
        const auto pooling = e.get<std::string>("pooling", "mean");
        if (pooling == "mean") {
            cfg.embed.pooling.mode = Pooling::mean;
        } else if (pooling == "decay") {
            cfg.embed.pooling.mode = Pooling::decay;
        } else {
            throw ConfigError("embed.pooling", "expected \"mean\" or \"decay\"");
        }
        cfg.embed.pooling.decay = e.get<double>("decay", cfg.embed.pooling.decay);
        if (!(cfg.embed.pooling.decay > 0.0 && cfg.embed.pooling.decay <= 1.0)) {
            throw ConfigError("embed.decay", "must lie in (0, 1]");
        }
        cfg.embed.pooling.context_window = e.get<std::size_t>("context_window", 0);
        e.reject_unknown();
        if (!cfg.embed.table.empty() && cfg.embed.table != "synthetic") {
            cfg.embed.table = resolve(base_dir, cfg.embed.table).string();
        }
        if (cfg.sampler == SamplerKind::asts) {
            if (cfg.embed.table.empty()) {
                throw ConfigError("embed.table", "required for sampler asts (a file path or \"synthetic\")");
            }
            if (cfg.embed.table != "synthetic" && !std::filesystem::exists(cfg.embed.table)) {
                throw ConfigError("embed.table", "no such file: " + cfg.embed.table);
            }
        }
    }

    {
        auto t = root.child("topk");
        cfg.topk = t.get<std::size_t>("k", cfg.topk);
        if (cfg.topk < 1) throw ConfigError("topk.k", "must be >= 1");
        t.reject_unknown();
    }
    {
        auto n = root.child("nucleus");
        cfg.nucleus_p = n.get<double>("p", cfg.nucleus_p);
        if (!(cfg.nucleus_p > 0.0 && cfg.nucleus_p <= 1.0)) throw ConfigError("nucleus.p", "must lie in (0, 1]");
        n.reject_unknown();
    }
    {
        auto m = root.child("mirostat");
        const double tau = m.get<double>("tau", 3.0);
        const double eta = m.get<double>("eta", 0.1);
        if (!(tau >= 0.0)) throw ConfigError("mirostat.tau", "must be >= 0");
        if (!(eta >= 0.0)) throw ConfigError("mirostat.eta", "must be >= 0");
        cfg.mirostat = MirostatState::with_target(tau, eta);
        cfg.mirostat.mu = m.get<double>("mu0", cfg.mirostat.mu);
        m.reject_unknown();
    }
    {
        auto z = root.child("zipf");
        cfg.zipf.min_rank = z.get<std::size_t>("min_rank", 1);
        cfg.zipf.max_rank = z.get<std::size_t>("max_rank", 0);
        if (cfg.zipf.min_rank < 1) throw ConfigError("zipf.min_rank", "must be >= 1");
        if (cfg.zipf.max_rank != 0 && cfg.zipf.max_rank <= cfg.zipf.min_rank) {
            throw ConfigError("zipf.max_rank", "must exceed zipf.min_rank (or be 0)");
        }
        z.reject_unknown();
    }
    root.reject_unknown();
    return cfg;
}

json read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config", "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
    }
}

void set_dotted(json& doc, const std::string& dotted, const json& value) {
    if (dotted.empty()) throw ConfigError("--param", "empty parameter path");
    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = dotted.find('.', start);
        const std::string key = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty()) throw ConfigError(dotted, "malformed parameter path");
        if (!node->is_object()) throw ConfigError(dotted, "path crosses a non-object value");
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        node = &(*node)[key];
        if (node->is_null()) *node = json::object();
        start = dot + 1;
    }
}

void apply_seed_override(json& doc) {
    const char* env = std::getenv("DECODE_SEED");
    if (env == nullptr || *env == '\0') return;
    char* end = nullptr;
    const unsigned long long seed = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || *env == '-') {
        throw ConfigError("DECODE_SEED", std::string("not an unsigned integer: '") + env + "'");
    }
    doc["seed"] = static_cast<std::uint64_t>(seed);
}

namespace {

std::shared_ptr<const LanguageModel> load_file_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("model.file", "cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path.string() + ": invalid JSON: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("tokens") || !doc.contains("probs")) {
        throw InputError(path.string() + ": expected {\"tokens\": [...], \"probs\": [...]}");
    }
    try {
        auto vocab = std::make_shared<const Vocabulary>(doc.at("tokens").get<std::vector<std::string>>());
        return std::make_shared<FixedDistributionModel>(
            TokenDistribution(vocab, doc.at("probs").get<std::vector<double>>()));
    } catch (const std::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

}  // namespace

RunResources prepare(const RunConfig& cfg) {
    RunResources res;
    if (cfg.model.name == "file") {
        res.model = load_file_model(cfg.model.file);
    } else {
        res.model = std::make_shared<SyntheticLm>(cfg.model.synthetic, Vocabulary::numbered(cfg.model.vocab_size));
    }
    const auto& vocab = res.model->vocab();

    auto to_ids = [&](const std::vector<std::string>& tokens, const std::string& where) {
        std::vector<TokenId> ids;
        for (const auto& tok : tokens) {
            auto id = vocab->find(tok);
            if (!id) throw ConfigError(where, "token '" + tok + "' is not in the model vocabulary");
            ids.push_back(*id);
        }
        return ids;
    };
    if (!cfg.prompt.empty()) res.prompts.push_back(to_ids(cfg.prompt, "prompt.tokens"));
    if (!cfg.prompt_file.empty()) {
        const auto records = read_corpus(cfg.prompt_file);
        for (const auto& rec : records) {
            res.prompts.push_back(to_ids(rec.tokens, "prompt.file (line " + std::to_string(rec.line) + ")"));
        }
        if (res.prompts.empty()) throw InputError(cfg.prompt_file.string() + ": no prompts");
    }

    if (cfg.sampler == SamplerKind::asts) {
        std::shared_ptr<const EmbeddingTable> table;
        if (cfg.embed.table == "synthetic") {
            table = std::make_shared<const EmbeddingTable>(synthetic_table(*vocab, cfg.embed.dim, cfg.embed.seed));
        } else {
            try {
                table = std::make_shared<const EmbeddingTable>(load_table(cfg.embed.table));
            } catch (const EmbeddingFormatError& e) {
                throw InputError(cfg.embed.table + ": " + e.what());
            }
        }
        for (const auto& tok : vocab->tokens()) {
            if (!table->contains(tok)) {
                throw ConfigError("embed.table", "no embedding for vocabulary token '" + tok + "'");
            }
        }
        res.alignment = std::make_shared<EmbeddingAlignment>(vocab, table, cfg.embed.pooling);
        if (cfg.relevance.kind == "keywords") {
            res.relevance = std::make_shared<KeywordOverlapRelevance>(vocab, cfg.relevance.keywords);
        } else {
            res.relevance = std::make_shared<ZeroRelevance>();
        }
    }
    return res;
}

std::unique_ptr<Sampler> make_sampler(const RunConfig& cfg, const RunResources& res,
                                      AstsSampler::Observer observer) {
    switch (cfg.sampler) {
        case SamplerKind::greedy: return std::make_unique<GreedySampler>();
        case SamplerKind::topk: return std::make_unique<TopKSampler>(cfg.topk);
        case SamplerKind::nucleus: return std::make_unique<NucleusSampler>(cfg.nucleus_p);
        case SamplerKind::mirostat: return std::make_unique<MirostatSampler>(cfg.mirostat);
        case SamplerKind::lts: return std::make_unique<LtsSampler>(cfg.lts);
        case SamplerKind::asts:
            return std::make_unique<AstsSampler>(cfg.asts, res.alignment, res.relevance, std::move(observer));
    }
    throw std::logic_error("unhandled sampler kind");
}

}  // namespace typdec::harness
