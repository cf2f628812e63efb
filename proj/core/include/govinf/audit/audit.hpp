#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace govinf {

inline constexpr double kAuditTolerance = 1e-9;

struct AuditMismatch {
    std::string trace_id;  // for ratios: the prompt id
    std::string metric;    // e.g. "aee", "tds_per_stage[3]", "ratio.tds"
    double stored = 0.0;   // NaN stands for an undefined ratio
    double recomputed = 0.0;
};

enum class AuditStatus { kClean, kMismatch, kMissingTrace, kNotIndependentlyAuditable };

[[nodiscard]] std::string_view to_string(AuditStatus status);

struct AuditVerdict {
    AuditStatus status = AuditStatus::kClean;
    std::string embedder_id;
    std::size_t reports_checked = 0;
    std::vector<AuditMismatch> mismatches;
    std::vector<std::string> missing_traces;

    [[nodiscard]] bool clean() const noexcept { return status == AuditStatus::kClean; }
};

/// Recomputes every metric report in `report_path` from the traces in
/// `store_path` with the recorded embedder and compares each value (and each
/// paired ratio) within `tolerance`. A report whose embedder cannot be rebuilt
/// deterministically yields kNotIndependentlyAuditable without comparing
/// anything. Throws StoreError/TraceFormatError/IoError when the inputs
/// cannot be read.
[[nodiscard]] AuditVerdict audit_recompute(const std::filesystem::path& store_path,
                                           const std::filesystem::path& report_path,
                                           double tolerance = kAuditTolerance);

/// One line per finding, suitable for terminal output.
[[nodiscard]] std::string render_verdict(const AuditVerdict& verdict);

}  // namespace govinf
