#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "govinf/backend/provider.hpp"
#include "govinf/core/errors.hpp"
#include "govinf/core/types.hpp"
#include "govinf/workflow/templates.hpp"

namespace govinf {

/// A run stopped before producing a complete trace. Carries the checkpoints
/// completed so far (plus the failing one, for parse failures) for
/// diagnostics; such partial traces are never stored.
class AbortedRunError : public Error {
public:
    enum class Cause { kProvider, kStageParse, kExtraction };

    AbortedRunError(Cause cause, std::string cause_code, std::size_t checkpoint,
                    std::vector<Checkpoint> partial, const std::string& message)
        : Error("ABORTED_RUN", message),
          cause_(cause),
          cause_code_(std::move(cause_code)),
          checkpoint_(checkpoint),
          partial_(std::move(partial)) {}

    [[nodiscard]] Cause cause() const noexcept { return cause_; }
    /// Code of the underlying error, e.g. MISSING_BLOCK or PROVIDER.
    [[nodiscard]] const std::string& cause_code() const noexcept { return cause_code_; }
    /// 1-based checkpoint at which the run failed.
    [[nodiscard]] std::size_t checkpoint() const noexcept { return checkpoint_; }
    [[nodiscard]] const std::vector<Checkpoint>& partial() const noexcept { return partial_; }

private:
    Cause cause_;
    std::string cause_code_;
    std::size_t checkpoint_;
    std::vector<Checkpoint> partial_;
};

struct CuaConfig {
    SamplingParams sampling;
    StageTemplates templates = StageTemplates::defaults();
    std::string run_config_digest;
};

/// Runs the five staged checkpoints in canonical order. Each prompt carries
/// the verbatim anchor and the artifacts of every earlier stage. Only the
/// provider is ever invoked; instruments are recorded, not executed.
///
/// Throws ContractError for a blank anchor and AbortedRunError when the
/// provider fails or a stage output breaks its block contract.
[[nodiscard]] InferenceTrace run_cua(const EpistemicAnchor& anchor, ModelProvider& provider,
                                     const CuaConfig& config);

/// Renders the prior-artifact section handed to a stage.
[[nodiscard]] std::string render_prior_artifacts(const std::vector<Checkpoint>& completed);

/// Builds the non-user-facing technical artifact from a trace whose five
/// checkpoints are present. Throws ContractError otherwise.
[[nodiscard]] TechnicalSynthesis build_technical_synthesis(const InferenceTrace& trace);

}  // namespace govinf
