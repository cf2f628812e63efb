#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>

#include "govinf/core/types.hpp"

namespace govinf {

inline constexpr std::string_view kAnchorPlaceholder = "{anchor}";
inline constexpr std::string_view kPriorArtifactsPlaceholder = "{prior_artifacts}";

struct StageTemplate {
    StageKind stage = StageKind::kExploration;
    std::string instruction_text;
    // Fixed description of the fenced block the stage must emit.
    std::string output_contract;
};

/// The required block format for a stage. Anchoring and OperationalDesign
/// additionally require an "instruments" array.
[[nodiscard]] std::string output_contract(StageKind stage);

/// One instruction template per staged checkpoint.
///
/// Template files are JSON objects mapping stage name to instruction text.
/// Every stage must be present, every template must contain {anchor}, and
/// every template after the first must contain {prior_artifacts}.
class StageTemplates {
public:
    [[nodiscard]] static StageTemplates defaults();
    /// Throws ConfigError on a missing or unknown stage or missing placeholder.
    [[nodiscard]] static StageTemplates from_json(std::string_view json);
    [[nodiscard]] static StageTemplates load(const std::filesystem::path& path);

    [[nodiscard]] const StageTemplate& at(StageKind stage) const;

    /// Substitutes both placeholders in one pass (text inserted for one
    /// placeholder is never rescanned) and appends the output contract.
    [[nodiscard]] std::string render(StageKind stage, std::string_view anchor,
                                     std::string_view prior_artifacts) const;

    /// Canonical JSON of instructions and contracts, for run digests.
    [[nodiscard]] std::string canonical_json() const;
    /// The instruction map alone, in template-file format.
    [[nodiscard]] std::string to_template_file() const;

    bool operator==(const StageTemplates&) const;

private:
    std::array<StageTemplate, kCheckpointsPerRun> templates_{};
};

/// The shipped default template file contents.
[[nodiscard]] std::string_view default_templates_json();

}  // namespace govinf
