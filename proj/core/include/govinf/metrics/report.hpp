#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "govinf/backend/embedder.hpp"
#include "govinf/core/types.hpp"
#include "govinf/metrics/metrics.hpp"

namespace govinf {

/// Every metric for one trace. `paradigm` lets consumers treat per-stage
/// deviation as interpretable for staged runs only.
struct MetricReport {
    std::string trace_id;
    Paradigm paradigm = Paradigm::kCua;
    std::size_t lwc = 0;
    double tds = 0.0;
    std::vector<StageDistance> tds_per_stage;
    double eas = 0.0;
    double aee = 0.0;
    std::size_t ici = 0;
    double ici_n = 0.0;
    double ies = 0.0;
    std::uint64_t tokens_reasoning = 0;
    std::uint64_t tokens_measurement = 0;
    std::string embedder_id;

    bool operator==(const MetricReport&) const = default;
};

/// Computes the full report. The trace must pass validate_trace
/// (ContractError otherwise).
[[nodiscard]] MetricReport compute_report(const InferenceTrace& trace, const Embedder& embedder);

/// Names of the scalar metrics, in CSV column order.
inline constexpr std::array<std::string_view, 9> kScalarMetrics{
    "lwc", "tds", "eas", "aee", "ici", "ici_n", "ies", "tokens_reasoning", "tokens_measurement"};

/// Value of a scalar metric by name. Throws ContractError for unknown names.
[[nodiscard]] double metric_value(const MetricReport& report, std::string_view metric);

/// Canonical JSON (sorted keys, no whitespace).
[[nodiscard]] std::string serialize_report(const MetricReport& report);
/// Throws TraceFormatError on malformed input.
[[nodiscard]] MetricReport deserialize_report(std::string_view bytes);

}  // namespace govinf
