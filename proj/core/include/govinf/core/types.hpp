#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace govinf {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::size_t kCheckpointsPerRun = 5;
inline constexpr std::size_t kCuaConvergenceIndex = 4;
inline constexpr std::size_t kBaselineConvergenceIndex = 5;
inline constexpr std::size_t kUciTaxonomySize = 11;

enum class Paradigm { kCua, kBaseline };

enum class StageKind {
    kExploration,
    kAnchoring,
    kOperationalDesign,
    kEpistemicSynthesis,
    kNarrativeRealization,
    kBaselineStep,
};

enum class UciClass {
    kComputational,
    kExperimental,
    kMethodological,
    kConceptual,
    kInstitutional,
    kOrganizational,
    kRegulatory,
    kGeographical,
    kEconomic,
    kEthical,
    kEducational,
};

inline constexpr std::array<StageKind, kCheckpointsPerRun> kCuaStageOrder{
    StageKind::kExploration,        StageKind::kAnchoring,
    StageKind::kOperationalDesign,  StageKind::kEpistemicSynthesis,
    StageKind::kNarrativeRealization,
};

inline constexpr std::array<UciClass, kUciTaxonomySize> kAllUciClasses{
    UciClass::kComputational,  UciClass::kExperimental, UciClass::kMethodological,
    UciClass::kConceptual,     UciClass::kInstitutional, UciClass::kOrganizational,
    UciClass::kRegulatory,     UciClass::kGeographical, UciClass::kEconomic,
    UciClass::kEthical,        UciClass::kEducational,
};

[[nodiscard]] std::string_view to_string(Paradigm p);
[[nodiscard]] std::string_view to_string(StageKind s);
[[nodiscard]] std::string_view to_string(UciClass c);

// Exact, case-sensitive inverses of to_string.
[[nodiscard]] std::optional<Paradigm> paradigm_from_string(std::string_view s);
[[nodiscard]] std::optional<StageKind> stage_from_string(std::string_view s);
[[nodiscard]] std::optional<UciClass> uci_class_from_string(std::string_view s);

[[nodiscard]] constexpr bool is_cua_stage(StageKind s) { return s != StageKind::kBaselineStep; }

/// The original human prompt. Never modified once a run starts.
class EpistemicAnchor {
public:
    EpistemicAnchor() = default;
    EpistemicAnchor(std::string id, std::string text) : id_(std::move(id)), text_(std::move(text)) {}

    [[nodiscard]] const std::string& id() const noexcept { return id_; }
    [[nodiscard]] const std::string& text() const noexcept { return text_; }

    /// True when the text is empty after trimming whitespace.
    [[nodiscard]] bool is_blank() const noexcept;

    bool operator==(const EpistemicAnchor&) const = default;

private:
    std::string id_;
    std::string text_;
};

struct InstrumentDeclaration {
    UciClass uci_class = UciClass::kComputational;
    std::string name;
    std::optional<std::string> purpose;
    std::optional<std::string> scope;
    std::optional<std::string> limitations;
    std::optional<std::string> institutional_embedding;
    std::size_t source_checkpoint = 0;

    /// Fraction of the four characterization attributes that are present and
    /// non-empty: one of 0, 0.25, 0.5, 0.75, 1.
    [[nodiscard]] double completeness() const noexcept;

    bool operator==(const InstrumentDeclaration&) const = default;
};

struct Checkpoint {
    std::size_t index = 0;  // 1-based
    StageKind stage = StageKind::kBaselineStep;
    std::string objective;
    std::string raw_output;
    std::uint64_t prompt_tokens = 0;
    std::uint64_t completion_tokens = 0;
    // Post-hoc extraction cost, kept out of the paradigm comparison.
    std::uint64_t measurement_tokens = 0;

    bool operator==(const Checkpoint&) const = default;
};

struct TechnicalSynthesis {
    std::vector<StageKind> stages_recorded;
    std::set<UciClass> uci_classes_declared;
    std::map<std::string, bool> metric_availability;
    std::string body;

    bool operator==(const TechnicalSynthesis&) const = default;
};

struct InferenceTrace {
    int schema_version = kSchemaVersion;
    Paradigm paradigm = Paradigm::kCua;
    EpistemicAnchor anchor;
    std::vector<Checkpoint> checkpoints;
    std::vector<InstrumentDeclaration> declarations;
    std::string synthesis_text;
    std::optional<TechnicalSynthesis> technical_synthesis;
    std::size_t convergence_index = 0;  // 1-based
    std::string run_config_digest;

    bool operator==(const InferenceTrace&) const = default;
};

/// Stable identifier of a trace inside a store: "<anchor id>/<paradigm>".
[[nodiscard]] std::string trace_id(const InferenceTrace& trace);
[[nodiscard]] std::string trace_id(std::string_view anchor_id, Paradigm paradigm);

/// Names of the metrics a trace can support, in report order.
inline constexpr std::array<std::string_view, 6> kMetricNames{"LWC", "TDS", "EAS", "AEE", "ICI", "IES"};

}  // namespace govinf
