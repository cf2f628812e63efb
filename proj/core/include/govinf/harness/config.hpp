#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "govinf/backend/embedder.hpp"
#include "govinf/backend/provider.hpp"
#include "govinf/workflow/baseline_workflow.hpp"
#include "govinf/workflow/cua_workflow.hpp"
#include "govinf/workflow/templates.hpp"

namespace govinf {

enum class BackendKind { kNone, kHttp, kScripted };

struct BackendConfig {
    BackendKind kind = BackendKind::kNone;
    std::string url;
    std::string model;
    std::string api_key_env;  // name of the variable holding the credential
    std::filesystem::path script;
    std::chrono::milliseconds timeout{120000};
    RetryPolicy retry;
};

struct EmbedderConfig {
    std::string kind = "reference";  // reference | remote
    std::string url;
    std::string model;
    std::string api_key_env;
};

/// Everything that drives a run. Loaded from a single JSON file:
///
///   {
///     "backend":  {"kind": "http"|"scripted", "url", "model", "api_key_env",
///                  "script", "timeout_ms", "max_attempts", "backoff_ms"},
///     "sampling": {"temperature", "top_p", "max_tokens", "seed"},
///     "cua":      {"templates": "<path to template file>"},
///     "baseline": {"extractor": "heuristic"|"model", "continuation_instruction",
///                  "extraction_instruction"},
///     "embedder": {"kind": "reference"|"remote", "url", "model", "api_key_env"},
///     "harness":  {"max_in_flight": 4}
///   }
///
/// Every key is optional. Relative paths resolve against the config file's
/// directory.
struct RunConfig {
    BackendConfig backend;
    SamplingParams sampling;
    StageTemplates templates = StageTemplates::defaults();
    BaselineConfig baseline;
    EmbedderConfig embedder;
    std::size_t max_in_flight = 4;
};

/// Throws ConfigError on unknown keys, wrong types or out-of-range values.
[[nodiscard]] RunConfig parse_config(std::string_view json,
                                     const std::filesystem::path& base_dir = {});
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

[[nodiscard]] std::optional<BackendKind> backend_kind_from_string(std::string_view s);

/// Hex SHA-256 over the canonical JSON of every output-affecting setting:
/// backend material, sampling, stage templates and contracts, baseline
/// continuation/extraction settings and the embedder id. The credential and
/// concurrency bound are excluded.
[[nodiscard]] std::string run_config_digest(const RunConfig& config,
                                            std::string_view backend_material,
                                            std::string_view embedder_id);

/// Builds the provider source named by the backend config. The credential is
/// read from the environment variable named by api_key_env, if any.
[[nodiscard]] std::unique_ptr<ProviderSource> make_provider_source(const BackendConfig& backend);

[[nodiscard]] std::unique_ptr<Embedder> make_embedder(const EmbedderConfig& embedder);

}  // namespace govinf
