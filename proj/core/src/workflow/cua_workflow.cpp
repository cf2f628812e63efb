#include "govinf/workflow/cua_workflow.hpp"

#include <sstream>

#include "govinf/core/block.hpp"
#include "govinf/core/text.hpp"
#include "govinf/core/validate.hpp"
#include "govinf/workflow/structured_block.hpp"

namespace govinf {
namespace {

std::map<std::string, bool> metric_availability(const InferenceTrace& t) {
    bool objectives = !t.checkpoints.empty();
    for (const auto& cp : t.checkpoints) objectives = objectives && !text::trim(cp.objective).empty();
    const bool lwc = t.convergence_index >= 1 && t.convergence_index <= t.checkpoints.size();
    const bool eas = !t.synthesis_text.empty();
    return {
        {"LWC", lwc},
        {"TDS", objectives},
        {"EAS", eas},
        {"AEE", objectives && eas},
        {"ICI", true},
        {"IES", true},
    };
}

}  // namespace

std::string render_prior_artifacts(const std::vector<Checkpoint>& completed) {
    if (completed.empty()) return "(none)";
    std::ostringstream out;
    for (const auto& cp : completed) {
        if (cp.index > 1) out << "\n\n";
        const auto split = split_last_block(cp.raw_output);
        StructuredBlock block;
        try {
            block = parse_structured_block(cp.raw_output, cp.stage, cp.index);
        } catch (const StageParseError&) {
            block.objective = cp.objective;
        }
        out << "[" << cp.index << "] " << to_string(cp.stage) << "\n"
            << "Objective: " << block.objective << "\n"
            << "Structured artifact: " << block_to_json(block) << "\n"
            << "Content:\n"
            << (split.prose.empty() ? "(empty)" : split.prose);
    }
    return out.str();
}

TechnicalSynthesis build_technical_synthesis(const InferenceTrace& trace) {
    if (trace.checkpoints.size() != kCheckpointsPerRun) {
        throw ContractError("technical synthesis needs all " + std::to_string(kCheckpointsPerRun) +
                            " checkpoints");
    }
    TechnicalSynthesis ts;
    for (const auto& cp : trace.checkpoints) ts.stages_recorded.push_back(cp.stage);
    for (const auto& d : trace.declarations) ts.uci_classes_declared.insert(d.uci_class);
    ts.metric_availability = metric_availability(trace);

    std::ostringstream body;
    body << "Technical synthesis for anchor " << trace.anchor.id() << "\n";
    body << "Stages recorded:";
    for (const auto& cp : trace.checkpoints) body << " " << cp.index << "=" << to_string(cp.stage);
    body << "\nConvergence: checkpoint " << trace.convergence_index << " of "
         << trace.checkpoints.size() << "\n";
    body << "UCI classes declared (" << ts.uci_classes_declared.size() << " of " << kUciTaxonomySize
         << "):";
    if (ts.uci_classes_declared.empty()) body << " none";
    for (auto c : ts.uci_classes_declared) body << " " << to_string(c);
    body << "\nInstrument declarations: " << trace.declarations.size() << "\n";
    for (const auto& d : trace.declarations) {
        body << "  - [" << to_string(d.uci_class) << "] " << d.name << " (checkpoint "
             << d.source_checkpoint << ", completeness " << d.completeness() << ")\n";
    }
    body << "Metric availability:";
    for (const auto& [name, available] : ts.metric_availability) {
        body << " " << name << "=" << (available ? "yes" : "no");
    }
    body << "\n";
    ts.body = body.str();
    return ts;
}

InferenceTrace run_cua(const EpistemicAnchor& anchor, ModelProvider& provider,
                       const CuaConfig& config) {
    if (anchor.is_blank()) throw ContractError("anchor text is blank");
    ModelRequest{"", config.sampling}.validate();

    InferenceTrace trace;
    trace.paradigm = Paradigm::kCua;
    trace.anchor = anchor;
    trace.run_config_digest = config.run_config_digest;

    for (std::size_t i = 0; i < kCuaStageOrder.size(); ++i) {
        const auto stage = kCuaStageOrder[i];
        const std::size_t index = i + 1;
        const ModelRequest request{
            config.templates.render(stage, anchor.text(), render_prior_artifacts(trace.checkpoints)),
            config.sampling};

        ModelResponse response;
        try {
            response = provider.invoke(request);
        } catch (const Error& e) {
            throw AbortedRunError(AbortedRunError::Cause::kProvider, e.code(), index,
                                  trace.checkpoints,
                                  "checkpoint " + std::to_string(index) + ": " + e.what());
        }

        Checkpoint cp;
        cp.index = index;
        cp.stage = stage;
        cp.raw_output = std::move(response.text);
        cp.prompt_tokens = response.prompt_tokens;
        cp.completion_tokens = response.completion_tokens;

        StructuredBlock block;
        try {
            block = parse_structured_block(cp.raw_output, stage, index);
        } catch (const StageParseError& e) {
            auto partial = trace.checkpoints;
            partial.push_back(cp);
            throw AbortedRunError(AbortedRunError::Cause::kStageParse, e.code(), index,
                                  std::move(partial),
                                  "checkpoint " + std::to_string(index) + ": " + e.what());
        }
        cp.objective = std::move(block.objective);
        for (auto& d : block.declarations) trace.declarations.push_back(std::move(d));
        trace.checkpoints.push_back(std::move(cp));
    }

    trace.convergence_index = kCuaConvergenceIndex;
    trace.synthesis_text = split_last_block(trace.checkpoints[kCuaConvergenceIndex - 1].raw_output).prose;
    trace.technical_synthesis = build_technical_synthesis(trace);

    if (const auto v = validate_trace(trace); !v.ok()) {
        throw ContractError("run produced an invalid trace: " + v.violations.front().code);
    }
    return trace;
}

}  // namespace govinf
