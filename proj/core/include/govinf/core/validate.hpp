#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "govinf/core/types.hpp"

namespace govinf {

struct Violation {
    std::string code;
    std::string detail;
};

struct ValidationResult {
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
    [[nodiscard]] bool has(std::string_view code) const noexcept;
};

/// Checks every structural invariant of a trace. Violations are returned as
/// data; this never throws.
///
/// Codes: SCHEMA_VERSION, ANCHOR_EMPTY, CUA_CHECKPOINT_COUNT,
/// BASELINE_CHECKPOINT_COUNT, CHECKPOINT_INDEX, CUA_STAGE_ORDER,
/// BASELINE_STAGE_KIND, OBJECTIVE_EMPTY, CONVERGENCE_INDEX,
/// BASELINE_HAS_DECLARATIONS, BASELINE_HAS_TECHNICAL_SYNTHESIS,
/// CUA_MISSING_TECHNICAL_SYNTHESIS, TECHNICAL_SYNTHESIS_STAGES,
/// TECHNICAL_SYNTHESIS_CLASSES, DECLARATION_NAME_EMPTY,
/// DECLARATION_SOURCE, SYNTHESIS_MISMATCH.
[[nodiscard]] ValidationResult validate_trace(const InferenceTrace& trace);

/// The text a trace's synthesis must equal: the prose of the CUA synthesis
/// checkpoint with its structured block removed, or the verbatim output of
/// the final baseline step. Empty when the convergence checkpoint is missing.
[[nodiscard]] std::string expected_synthesis_text(const InferenceTrace& trace);

}  // namespace govinf
