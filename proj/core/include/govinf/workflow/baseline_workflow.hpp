#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "govinf/backend/provider.hpp"
#include "govinf/core/types.hpp"
#include "govinf/workflow/cua_workflow.hpp"

namespace govinf {

enum class ExtractorMode { kHeuristic, kModel };

[[nodiscard]] std::string_view to_string(ExtractorMode mode);
[[nodiscard]] std::optional<ExtractorMode> extractor_from_string(std::string_view s);

inline constexpr std::size_t kHeuristicObjectiveMaxChars = 240;

[[nodiscard]] std::string_view default_continuation_instruction();
[[nodiscard]] std::string_view default_extraction_instruction();

struct BaselineConfig {
    SamplingParams sampling;
    std::string continuation_instruction{default_continuation_instruction()};
    ExtractorMode extractor = ExtractorMode::kHeuristic;
    std::string extraction_instruction{default_extraction_instruction()};
    std::string run_config_digest;
};

/// Prompt for baseline step `step` (1-based): the anchor alone for step 1,
/// otherwise anchor, every prior output and the continuation instruction,
/// separated by blank lines.
[[nodiscard]] std::string baseline_prompt(std::string_view anchor,
                                          const std::vector<Checkpoint>& prior,
                                          std::string_view continuation_instruction);

/// Five chained invocations with no role separation, then post-hoc objective
/// extraction with the configured extractor. `extraction_provider` is used
/// in model mode only and defaults to `provider`.
///
/// Throws ContractError for a blank anchor and AbortedRunError on provider or
/// extraction failure.
[[nodiscard]] InferenceTrace run_baseline(const EpistemicAnchor& anchor, ModelProvider& provider,
                                          const BaselineConfig& config,
                                          ModelProvider* extraction_provider = nullptr);

/// First sentence of `raw_output` (up to and including the first '.', '!'
/// or '?' followed by whitespace or end of text, or up to a blank line),
/// trimmed and cut to 240 code points. Falls back to the anchor text for
/// empty output.
[[nodiscard]] std::string heuristic_objective(std::string_view raw_output, std::string_view anchor);

/// Prompt for one model-mode extraction call.
[[nodiscard]] std::string extraction_prompt(std::string_view instruction, std::string_view anchor,
                                            std::string_view raw_output);

/// Fills every checkpoint objective. Model mode books the extraction call's
/// tokens to measurement_tokens only; an empty extraction answer falls back
/// to the heuristic. Throws AbortedRunError (cause kExtraction) if model-mode
/// extraction fails; heuristic mode cannot fail.
[[nodiscard]] InferenceTrace extract_posthoc_objectives(InferenceTrace trace,
                                                        const BaselineConfig& config,
                                                        ModelProvider* extraction_provider);

}  // namespace govinf
