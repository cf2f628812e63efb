#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "govinf/harness/experiment.hpp"
#include "govinf/harness/summary.hpp"

namespace govinf {

// File names written under the output directory.
inline constexpr std::string_view kStoreFile = "traces.jsonl";
inline constexpr std::string_view kReportFile = "reports.json";
inline constexpr std::string_view kExecutionsCsv = "executions.csv";
inline constexpr std::string_view kSummaryFile = "summary.json";
inline constexpr std::string_view kPlotDataFile = "plot_data.json";
inline constexpr std::string_view kFailuresFile = "failures.jsonl";
inline constexpr std::string_view kRatioDir = "ratios";

struct ReportOptions {
    bool plot_data = true;
};

/// Summaries for each scalar metric per paradigm, then each ratio metric
/// (paradigm "ratio"), over successful pairs. Undefined ratios are skipped;
/// a metric with no values gets no summary.
[[nodiscard]] std::vector<DistributionSummary> summarize_executions(
    const std::vector<PairedExecution>& executions);

/// Canonical JSON of the report document the audit checks against.
[[nodiscard]] std::string report_document(const ExperimentResult& result);

/// Writes reports.json, executions.csv, ratios/<metric>.csv, summary.json,
/// failures.jsonl and (optionally) plot_data.json. Existing files are
/// replaced. Throws ContractError without a successful pair and IoError when
/// the directory is not writable.
void emit_report(const ExperimentResult& result, const std::filesystem::path& out_dir,
                 const ReportOptions& options = {});

}  // namespace govinf
