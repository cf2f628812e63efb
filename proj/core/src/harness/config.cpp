#include "govinf/harness/config.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "core/json_util.hpp"
#include "govinf/backend/http_provider.hpp"
#include "govinf/backend/scripted_provider.hpp"

namespace govinf {
namespace {

using detail::Json;

class Section {
public:
    Section(const Json& node, std::string name) : node_(node), name_(std::move(name)) {
        if (!node_.is_object()) throw ConfigError("config section '" + name_ + "' must be an object");
    }

    void allow(std::initializer_list<std::string_view> keys) const {
        for (const auto& item : node_.items()) {
            if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) {
                throw ConfigError("unknown config key " + name_ + "." + item.key());
            }
        }
    }

    const Json* get(const char* key) const {
        auto it = node_.find(key);
        return it == node_.end() || it->is_null() ? nullptr : &*it;
    }

    std::optional<std::string> string(const char* key) const {
        const Json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_string()) fail(key, "must be a string");
        return v->get<std::string>();
    }

    std::optional<double> number(const char* key) const {
        const Json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_number()) fail(key, "must be a number");
        return v->get<double>();
    }

    std::optional<long long> integer(const char* key) const {
        const Json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_number_integer()) fail(key, "must be an integer");
        return v->get<long long>();
    }

    [[noreturn]] void fail(const char* key, const std::string& what) const {
        throw ConfigError("config key " + name_ + "." + key + " " + what);
    }

private:
    const Json& node_;
    std::string name_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

std::string hex_sha256(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw Error("DIGEST", "SHA-256 computation failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(length * 2);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0x0F]);
    }
    return out;
}

std::string read_env(const std::string& name) {
    if (name.empty()) return {};
    const char* value = std::getenv(name.c_str());
    if (value == nullptr) throw ConfigError("environment variable " + name + " is not set");
    return value;
}

}  // namespace

std::optional<BackendKind> backend_kind_from_string(std::string_view s) {
    if (s == "http") return BackendKind::kHttp;
    if (s == "scripted") return BackendKind::kScripted;
    return std::nullopt;
}

RunConfig parse_config(std::string_view json, const std::filesystem::path& base_dir) {
    Json doc;
    try {
        doc = Json::parse(json.begin(), json.end());
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    const Section root(doc, "$");
    root.allow({"backend", "sampling", "cua", "baseline", "embedder", "harness"});

    RunConfig config;
    if (const Json* node = root.get("backend")) {
        const Section s(*node, "backend");
        s.allow({"kind", "url", "model", "api_key_env", "script", "timeout_ms", "max_attempts",
                 "backoff_ms"});
        auto& b = config.backend;
        if (auto kind = s.string("kind")) {
            auto k = backend_kind_from_string(*kind);
            if (!k) s.fail("kind", "must be \"http\" or \"scripted\"");
            b.kind = *k;
        }
        b.url = s.string("url").value_or("");
        b.model = s.string("model").value_or("");
        b.api_key_env = s.string("api_key_env").value_or("");
        if (auto script = s.string("script")) b.script = resolve(base_dir, *script);
        if (auto t = s.integer("timeout_ms")) {
            if (*t <= 0) s.fail("timeout_ms", "must be positive");
            b.timeout = std::chrono::milliseconds(*t);
        }
        if (auto n = s.integer("max_attempts")) {
            if (*n < 1) s.fail("max_attempts", "must be at least 1");
            b.retry.max_attempts = static_cast<int>(*n);
        }
        if (auto ms = s.integer("backoff_ms")) {
            if (*ms < 0) s.fail("backoff_ms", "must be non-negative");
            b.retry.initial_backoff = std::chrono::milliseconds(*ms);
        }
    }

    if (const Json* node = root.get("sampling")) {
        const Section s(*node, "sampling");
        s.allow({"temperature", "top_p", "max_tokens", "seed"});
        auto& p = config.sampling;
        if (auto v = s.number("temperature")) p.temperature = *v;
        if (auto v = s.number("top_p")) p.top_p = *v;
        if (auto v = s.integer("max_tokens")) p.max_tokens = static_cast<int>(*v);
        if (node->contains("seed")) {
            if ((*node)["seed"].is_null()) {
                p.seed.reset();
            } else {
                p.seed = s.integer("seed");
            }
        }
        try {
            ModelRequest{"", p}.validate();
        } catch (const ContractError& e) {
            throw ConfigError(std::string("invalid sampling: ") + e.what());
        }
    }

    if (const Json* node = root.get("cua")) {
        const Section s(*node, "cua");
        s.allow({"templates"});
        if (auto path = s.string("templates")) {
            config.templates = StageTemplates::load(resolve(base_dir, *path));
        }
    }

    if (const Json* node = root.get("baseline")) {
        const Section s(*node, "baseline");
        s.allow({"extractor", "continuation_instruction", "extraction_instruction"});
        if (auto e = s.string("extractor")) {
            auto mode = extractor_from_string(*e);
            if (!mode) s.fail("extractor", "must be \"heuristic\" or \"model\"");
            config.baseline.extractor = *mode;
        }
        if (auto c = s.string("continuation_instruction")) config.baseline.continuation_instruction = *c;
        if (auto c = s.string("extraction_instruction")) config.baseline.extraction_instruction = *c;
    }

    if (const Json* node = root.get("embedder")) {
        const Section s(*node, "embedder");
        s.allow({"kind", "url", "model", "api_key_env"});
        auto& e = config.embedder;
        e.kind = s.string("kind").value_or("reference");
        if (e.kind != "reference" && e.kind != "remote") {
            s.fail("kind", "must be \"reference\" or \"remote\"");
        }
        e.url = s.string("url").value_or("");
        e.model = s.string("model").value_or("");
        e.api_key_env = s.string("api_key_env").value_or("");
    }

    if (const Json* node = root.get("harness")) {
        const Section s(*node, "harness");
        s.allow({"max_in_flight"});
        if (auto n = s.integer("max_in_flight")) {
            if (*n < 1) s.fail("max_in_flight", "must be at least 1");
            config.max_in_flight = static_cast<std::size_t>(*n);
        }
    }

    config.baseline.sampling = config.sampling;
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.parent_path());
}

std::string run_config_digest(const RunConfig& config, std::string_view backend_material,
                              std::string_view embedder_id) {
    const auto& s = config.sampling;
    const Json material{
        {"schema_version", kSchemaVersion},
        {"backend", backend_material},
        {"sampling",
         Json{{"temperature", s.temperature},
              {"top_p", s.top_p},
              {"max_tokens", s.max_tokens},
              {"seed", s.seed ? Json(*s.seed) : Json(nullptr)}}},
        {"templates", Json::parse(config.templates.canonical_json())},
        {"baseline",
         Json{{"extractor", to_string(config.baseline.extractor)},
              {"continuation_instruction", config.baseline.continuation_instruction},
              {"extraction_instruction", config.baseline.extraction_instruction}}},
        {"embedder_id", embedder_id},
    };
    return hex_sha256(detail::canonical_dump(material));
}

std::unique_ptr<ProviderSource> make_provider_source(const BackendConfig& backend) {
    switch (backend.kind) {
        case BackendKind::kScripted:
            if (backend.script.empty()) throw ConfigError("scripted backend needs a script file");
            return std::make_unique<ScriptedProviderSource>(ScriptBook::load(backend.script));
        case BackendKind::kHttp: {
            if (backend.url.empty()) throw ConfigError("http backend needs backend.url");
            HttpProviderOptions options;
            options.url = backend.url;
            options.model = backend.model;
            options.api_key = read_env(backend.api_key_env);
            options.timeout = backend.timeout;
            options.retry = backend.retry;
            return std::make_unique<SharedProviderSource>(
                std::make_shared<HttpProvider>(std::move(options)));
        }
        case BackendKind::kNone:
            break;
    }
    throw ConfigError("no backend configured");
}

std::unique_ptr<Embedder> make_embedder(const EmbedderConfig& embedder) {
    if (embedder.kind == "reference") return std::make_unique<ReferenceEmbedder>();
    if (embedder.kind == "remote") {
        if (embedder.url.empty()) throw ConfigError("remote embedder needs embedder.url");
        RemoteEmbedderOptions options;
        options.url = embedder.url;
        options.model = embedder.model;
        options.api_key = read_env(embedder.api_key_env);
        return std::make_unique<RemoteEmbedder>(std::move(options));
    }
    throw ConfigError("unknown embedder kind " + embedder.kind);
}

}  // namespace govinf
