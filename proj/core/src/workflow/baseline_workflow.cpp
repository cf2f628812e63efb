#include "govinf/workflow/baseline_workflow.hpp"

#include "govinf/core/text.hpp"
#include "govinf/core/validate.hpp"

namespace govinf {
namespace {

constexpr std::string_view kContinuation =
    "Continue developing your response to the request above. Build on what you have written so "
    "far and move toward a complete answer.";

constexpr std::string_view kExtraction =
    "State, in one sentence, the objective that the response below was pursuing with respect to "
    "the request. Reply with that sentence only.";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// True when s[pos] is '\n' and only spaces/tabs/'\r' separate it from the next '\n'.
bool starts_blank_line(std::string_view s, std::size_t pos) {
    if (s[pos] != '\n') return false;
    for (std::size_t k = pos + 1; k < s.size(); ++k) {
        if (s[k] == '\n') return true;
        if (s[k] != ' ' && s[k] != '\t' && s[k] != '\r') return false;
    }
    return false;
}

}  // namespace

std::string_view to_string(ExtractorMode mode) {
    return mode == ExtractorMode::kHeuristic ? "heuristic" : "model";
}

std::optional<ExtractorMode> extractor_from_string(std::string_view s) {
    if (s == "heuristic") return ExtractorMode::kHeuristic;
    if (s == "model") return ExtractorMode::kModel;
    return std::nullopt;
}

std::string_view default_continuation_instruction() { return kContinuation; }
std::string_view default_extraction_instruction() { return kExtraction; }

std::string baseline_prompt(std::string_view anchor, const std::vector<Checkpoint>& prior,
                            std::string_view continuation_instruction) {
    std::string prompt(anchor);
    if (prior.empty()) return prompt;
    for (const auto& cp : prior) {
        prompt += "\n\n";
        prompt += cp.raw_output;
    }
    prompt += "\n\n";
    prompt += continuation_instruction;
    return prompt;
}

std::string heuristic_objective(std::string_view raw_output, std::string_view anchor) {
    const auto s = text::trim(raw_output);
    if (s.empty()) return std::string(anchor);
    std::size_t end = s.size();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if ((c == '.' || c == '!' || c == '?') && (i + 1 == s.size() || is_space(s[i + 1]))) {
            end = i + 1;
            break;
        }
        if (starts_blank_line(s, i)) {
            end = i;
            break;
        }
    }
    return text::truncate_codepoints(text::trim(s.substr(0, end)), kHeuristicObjectiveMaxChars);
}

std::string extraction_prompt(std::string_view instruction, std::string_view anchor,
                              std::string_view raw_output) {
    std::string prompt(instruction);
    prompt += "\n\nRequest:\n";
    prompt += anchor;
    prompt += "\n\nResponse:\n";
    prompt += raw_output;
    return prompt;
}

InferenceTrace extract_posthoc_objectives(InferenceTrace trace, const BaselineConfig& config,
                                          ModelProvider* extraction_provider) {
    if (trace.paradigm != Paradigm::kBaseline || trace.checkpoints.size() != kCheckpointsPerRun) {
        throw ContractError("post-hoc extraction needs a complete baseline trace");
    }
    const auto& anchor = trace.anchor.text();
    for (auto& cp : trace.checkpoints) {
        if (config.extractor == ExtractorMode::kHeuristic) {
            cp.objective = heuristic_objective(cp.raw_output, anchor);
            continue;
        }
        if (extraction_provider == nullptr) throw ContractError("model extractor needs a provider");
        ModelResponse response;
        try {
            response = extraction_provider->invoke(
                {extraction_prompt(config.extraction_instruction, anchor, cp.raw_output),
                 config.sampling});
        } catch (const Error& e) {
            throw AbortedRunError(AbortedRunError::Cause::kExtraction, e.code(), cp.index,
                                  trace.checkpoints,
                                  "objective extraction at checkpoint " +
                                      std::to_string(cp.index) + ": " + e.what());
        }
        cp.measurement_tokens = response.prompt_tokens + response.completion_tokens;
        const auto answer = text::trim(response.text);
        cp.objective = answer.empty()
                           ? heuristic_objective(cp.raw_output, anchor)
                           : text::truncate_codepoints(answer, kHeuristicObjectiveMaxChars);
    }
    return trace;
}

InferenceTrace run_baseline(const EpistemicAnchor& anchor, ModelProvider& provider,
                            const BaselineConfig& config, ModelProvider* extraction_provider) {
    if (anchor.is_blank()) throw ContractError("anchor text is blank");
    ModelRequest{"", config.sampling}.validate();

    InferenceTrace trace;
    trace.paradigm = Paradigm::kBaseline;
    trace.anchor = anchor;
    trace.run_config_digest = config.run_config_digest;

    for (std::size_t step = 1; step <= kCheckpointsPerRun; ++step) {
        const ModelRequest request{
            baseline_prompt(anchor.text(), trace.checkpoints, config.continuation_instruction),
            config.sampling};
        ModelResponse response;
        try {
            response = provider.invoke(request);
        } catch (const Error& e) {
            throw AbortedRunError(AbortedRunError::Cause::kProvider, e.code(), step,
                                  trace.checkpoints,
                                  "checkpoint " + std::to_string(step) + ": " + e.what());
        }
        Checkpoint cp;
        cp.index = step;
        cp.stage = StageKind::kBaselineStep;
        cp.raw_output = std::move(response.text);
        cp.prompt_tokens = response.prompt_tokens;
        cp.completion_tokens = response.completion_tokens;
        trace.checkpoints.push_back(std::move(cp));
    }
    trace.convergence_index = kBaselineConvergenceIndex;
    trace.synthesis_text = trace.checkpoints.back().raw_output;

    trace = extract_posthoc_objectives(std::move(trace), config,
                                       extraction_provider ? extraction_provider : &provider);
    if (const auto v = validate_trace(trace); !v.ok()) {
        throw ContractError("run produced an invalid trace: " + v.violations.front().code);
    }
    return trace;
}

}  // namespace govinf
