#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "govinf/backend/embedder.hpp"
#include "govinf/backend/provider.hpp"
#include "govinf/harness/prompt_set.hpp"
#include "govinf/metrics/report.hpp"
#include "govinf/workflow/baseline_workflow.hpp"
#include "govinf/workflow/cua_workflow.hpp"

namespace govinf {

/// Metrics for which a CUA/baseline ratio is reported.
inline constexpr std::array<std::string_view, 8> kRatioMetrics{
    "lwc", "tds", "eas", "aee", "ici", "ici_n", "ies", "tokens_reasoning"};

/// CUA value over baseline value, or nullopt when the baseline value is 0.
using RatioMap = std::map<std::string, std::optional<double>>;

[[nodiscard]] RatioMap compute_ratios(const MetricReport& cua, const MetricReport& baseline);

struct FailureInfo {
    std::string paradigm;  // which run failed ("CUA", "Baseline"), or "metrics"
    std::string code;      // underlying error code
    std::size_t checkpoint = 0;
    std::string message;
    std::size_t partial_checkpoints = 0;
};

struct PairedExecution {
    std::string prompt_id;
    std::string cua_trace_ref;
    std::string baseline_trace_ref;
    std::optional<MetricReport> cua_report;
    std::optional<MetricReport> baseline_report;
    RatioMap ratios;
    std::vector<FailureInfo> failures;  // empty for a successful pair

    [[nodiscard]] bool ok() const noexcept { return failures.empty(); }
};

struct ExperimentResult {
    std::vector<PairedExecution> executions;  // prompt-set order
    std::vector<InferenceTrace> traces;       // successful pairs only: cua then baseline
    std::string run_config_digest;
    std::string embedder_id;
};

struct ExperimentContext {
    const ProviderSource* providers = nullptr;
    const Embedder* embedder = nullptr;
    CuaConfig cua;
    BaselineConfig baseline;
    std::size_t max_in_flight = 4;
};

/// Runs both paradigms on every prompt under identical provider, sampling and
/// embedder settings, at most `max_in_flight` prompts at a time. A failing
/// prompt is recorded and the batch continues. Output order is the
/// prompt-set order regardless of scheduling.
///
/// Throws ConfigError for an empty prompt set or missing context members.
[[nodiscard]] ExperimentResult run_experiment(const std::vector<Prompt>& prompts,
                                              const ExperimentContext& context);

}  // namespace govinf
