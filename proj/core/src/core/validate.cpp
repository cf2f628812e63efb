#include "govinf/core/validate.hpp"

#include <algorithm>

#include "govinf/core/block.hpp"
#include "govinf/core/text.hpp"

namespace govinf {
namespace {

class Collector {
public:
    void add(std::string code, std::string detail) {
        result_.violations.push_back({std::move(code), std::move(detail)});
    }
    ValidationResult take() { return std::move(result_); }

private:
    ValidationResult result_;
};

void check_checkpoints(const InferenceTrace& t, Collector& out) {
    const bool cua = t.paradigm == Paradigm::kCua;
    if (t.checkpoints.size() != kCheckpointsPerRun) {
        out.add(cua ? "CUA_CHECKPOINT_COUNT" : "BASELINE_CHECKPOINT_COUNT",
                "expected " + std::to_string(kCheckpointsPerRun) + " checkpoints, found " +
                    std::to_string(t.checkpoints.size()));
    }
    for (std::size_t i = 0; i < t.checkpoints.size(); ++i) {
        const auto& cp = t.checkpoints[i];
        if (cp.index != i + 1) {
            out.add("CHECKPOINT_INDEX", "position " + std::to_string(i + 1) + " carries index " +
                                            std::to_string(cp.index));
        }
        if (cua) {
            if (i >= kCuaStageOrder.size() || cp.stage != kCuaStageOrder[i]) {
                out.add("CUA_STAGE_ORDER", "checkpoint " + std::to_string(i + 1) + " has stage " +
                                               std::string(to_string(cp.stage)));
            }
        } else if (cp.stage != StageKind::kBaselineStep) {
            out.add("BASELINE_STAGE_KIND", "checkpoint " + std::to_string(i + 1) + " has stage " +
                                               std::string(to_string(cp.stage)));
        }
        if (text::trim(cp.objective).empty()) {
            out.add("OBJECTIVE_EMPTY", "checkpoint " + std::to_string(i + 1));
        }
    }
}

void check_declarations(const InferenceTrace& t, Collector& out) {
    for (std::size_t i = 0; i < t.declarations.size(); ++i) {
        const auto& d = t.declarations[i];
        if (text::trim(d.name).empty()) {
            out.add("DECLARATION_NAME_EMPTY", "declaration " + std::to_string(i));
        }
        if (d.source_checkpoint < 1 || d.source_checkpoint > t.checkpoints.size()) {
            out.add("DECLARATION_SOURCE", "declaration " + std::to_string(i) +
                                              " references checkpoint " +
                                              std::to_string(d.source_checkpoint));
        }
    }
}

void check_technical_synthesis(const InferenceTrace& t, Collector& out) {
    if (t.paradigm == Paradigm::kBaseline) {
        if (t.technical_synthesis) out.add("BASELINE_HAS_TECHNICAL_SYNTHESIS", "");
        return;
    }
    if (!t.technical_synthesis) {
        out.add("CUA_MISSING_TECHNICAL_SYNTHESIS", "");
        return;
    }
    const auto& ts = *t.technical_synthesis;
    std::vector<StageKind> executed;
    for (const auto& cp : t.checkpoints) executed.push_back(cp.stage);
    if (ts.stages_recorded != executed) out.add("TECHNICAL_SYNTHESIS_STAGES", "");

    std::set<UciClass> declared;
    for (const auto& d : t.declarations) declared.insert(d.uci_class);
    if (ts.uci_classes_declared != declared) out.add("TECHNICAL_SYNTHESIS_CLASSES", "");
}

}  // namespace

bool ValidationResult::has(std::string_view code) const noexcept {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.code == code; });
}

std::string expected_synthesis_text(const InferenceTrace& trace) {
    const std::size_t index = trace.paradigm == Paradigm::kCua ? kCuaConvergenceIndex
                                                                : kBaselineConvergenceIndex;
    if (trace.checkpoints.size() < index) return {};
    const auto& raw = trace.checkpoints[index - 1].raw_output;
    if (trace.paradigm == Paradigm::kBaseline) return raw;
    return split_last_block(raw).prose;
}

ValidationResult validate_trace(const InferenceTrace& t) {
    Collector out;
    if (t.schema_version != kSchemaVersion) {
        out.add("SCHEMA_VERSION", "found " + std::to_string(t.schema_version));
    }
    if (t.anchor.is_blank()) out.add("ANCHOR_EMPTY", "");

    check_checkpoints(t, out);

    const std::size_t expected_convergence = t.paradigm == Paradigm::kCua
                                                 ? kCuaConvergenceIndex
                                                 : kBaselineConvergenceIndex;
    if (t.convergence_index != expected_convergence) {
        out.add("CONVERGENCE_INDEX", "expected " + std::to_string(expected_convergence) +
                                         ", found " + std::to_string(t.convergence_index));
    }

    if (t.paradigm == Paradigm::kBaseline && !t.declarations.empty()) {
        out.add("BASELINE_HAS_DECLARATIONS",
                std::to_string(t.declarations.size()) + " declarations");
    }
    check_declarations(t, out);
    check_technical_synthesis(t, out);

    if (t.checkpoints.size() >= expected_convergence &&
        t.synthesis_text != expected_synthesis_text(t)) {
        out.add("SYNTHESIS_MISMATCH", "synthesis_text differs from convergence checkpoint");
    }
    return out.take();
}

}  // namespace govinf
