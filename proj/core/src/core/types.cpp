#include "govinf/core/types.hpp"

#include <algorithm>

#include "govinf/core/text.hpp"

namespace govinf {
namespace {

constexpr std::array<std::string_view, 6> kStageNames{
    "Exploration",        "Anchoring",            "OperationalDesign",
    "EpistemicSynthesis", "NarrativeRealization", "BaselineStep",
};

constexpr std::array<std::string_view, kUciTaxonomySize> kUciNames{
    "Computational",  "Experimental",   "Methodological", "Conceptual",
    "Institutional",  "Organizational", "Regulatory",     "Geographical",
    "Economic",       "Ethical",        "Educational",
};

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::string_view, N>& names, std::string_view s) {
    auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end()) return std::nullopt;
    return static_cast<Enum>(it - names.begin());
}

bool has_content(const std::optional<std::string>& field) {
    return field.has_value() && !text::trim(*field).empty();
}

}  // namespace

std::string_view to_string(Paradigm p) { return p == Paradigm::kCua ? "CUA" : "Baseline"; }
std::string_view to_string(StageKind s) { return kStageNames[static_cast<std::size_t>(s)]; }
std::string_view to_string(UciClass c) { return kUciNames[static_cast<std::size_t>(c)]; }

std::optional<Paradigm> paradigm_from_string(std::string_view s) {
    if (s == "CUA") return Paradigm::kCua;
    if (s == "Baseline") return Paradigm::kBaseline;
    return std::nullopt;
}

std::optional<StageKind> stage_from_string(std::string_view s) {
    return lookup<StageKind>(kStageNames, s);
}

std::optional<UciClass> uci_class_from_string(std::string_view s) {
    return lookup<UciClass>(kUciNames, s);
}

bool EpistemicAnchor::is_blank() const noexcept { return text::trim(text_).empty(); }

double InstrumentDeclaration::completeness() const noexcept {
    const int filled = int{has_content(purpose)} + int{has_content(scope)} +
                       int{has_content(limitations)} + int{has_content(institutional_embedding)};
    return filled / 4.0;
}

std::string trace_id(std::string_view anchor_id, Paradigm paradigm) {
    std::string id(anchor_id);
    id += paradigm == Paradigm::kCua ? "/cua" : "/baseline";
    return id;
}

std::string trace_id(const InferenceTrace& trace) {
    return trace_id(trace.anchor.id(), trace.paradigm);
}

}  // namespace govinf
