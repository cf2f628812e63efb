#include "govinf/workflow/templates.hpp"

#include <fstream>
#include <sstream>

#include "core/json_util.hpp"
#include "govinf/core/block.hpp"

namespace govinf {
namespace {

using detail::Json;

constexpr std::string_view kDefaultTemplates = R"json({
  "Exploration": "You are the exploration and framing stage of a staged inquiry. Clarify and stabilize the intent of the request below: restate what is being asked, name the key concepts and their possible readings, and frame the questions the inquiry must answer. Do not answer the request yet and do not carry out any computation, experiment or external action.\n\nRequest:\n{anchor}",
  "Anchoring": "You are the epistemic anchoring and instrumental mapping stage of a staged inquiry. Situate the request below within existing knowledge and identify the instruments (computational, experimental, methodological, conceptual, institutional, organizational, regulatory, geographical, economic, ethical or educational) through which it could be investigated. Identify instruments only; never execute them or simulate their results.\n\nRequest:\n{anchor}\n\nArtifacts from earlier stages:\n{prior_artifacts}",
  "OperationalDesign": "You are the operational design stage of a staged inquiry. Organize the methodological and procedural options for investigating the request below, building on the instruments already identified and adding any further instruments the design requires. The design is non-executable: describe options, sequencing and dependencies, but do not run, compute or simulate anything.\n\nRequest:\n{anchor}\n\nArtifacts from earlier stages:\n{prior_artifacts}",
  "EpistemicSynthesis": "You are the interpretation and synthesis stage of a staged inquiry. Integrate the artifacts of the earlier stages into one coherent, convergent answer to the request below. Stay anchored to the original request and introduce no instrument that was not identified earlier.\n\nRequest:\n{anchor}\n\nArtifacts from earlier stages:\n{prior_artifacts}",
  "NarrativeRealization": "You are the narrative realization stage of a staged inquiry. Render the synthesis produced by the previous stage as a clear narrative for the person who asked the request below. Do not add new claims, instruments or conclusions beyond the synthesis.\n\nRequest:\n{anchor}\n\nArtifacts from earlier stages:\n{prior_artifacts}"
}
)json";

std::string class_list() {
    std::string out;
    for (auto c : kAllUciClasses) {
        if (!out.empty()) out += ", ";
        out += to_string(c);
    }
    return out;
}

bool needs_instruments(StageKind stage) {
    return stage == StageKind::kAnchoring || stage == StageKind::kOperationalDesign;
}

}  // namespace

std::string output_contract(StageKind stage) {
    std::string out =
        "End your answer with a structured block: a line containing exactly " +
        std::string(kBlockOpen) + ", then one JSON object, then a line containing exactly " +
        std::string(kBlockClose) +
        ". The object must have a string field \"objective\" stating, in one sentence, the "
        "epistemic objective this stage pursued.";
    if (needs_instruments(stage)) {
        out += " It must also have an array field \"instruments\" listing every instrument you "
               "identified as relevant (identified, never executed). Each entry is an object with "
               "\"class\" (one of: " +
               class_list() +
               "), \"name\", and the optional strings \"purpose\", \"scope\", \"limitations\" and "
               "\"institutional_embedding\". Use an empty array if none apply.";
    }
    return out;
}

std::string_view default_templates_json() { return kDefaultTemplates; }

StageTemplates StageTemplates::defaults() { return from_json(kDefaultTemplates); }

StageTemplates StageTemplates::from_json(std::string_view json) {
    Json doc;
    try {
        doc = Json::parse(json.begin(), json.end());
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("template file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("template file must be a JSON object");

    for (const auto& item : doc.items()) {
        auto stage = stage_from_string(item.key());
        if (!stage || !is_cua_stage(*stage)) throw ConfigError("unknown template stage: " + item.key());
    }

    StageTemplates out;
    for (std::size_t i = 0; i < kCuaStageOrder.size(); ++i) {
        const auto stage = kCuaStageOrder[i];
        const std::string name(to_string(stage));
        auto it = doc.find(name);
        if (it == doc.end()) throw ConfigError("template file lacks stage " + name);
        if (!it->is_string()) throw ConfigError("template for " + name + " must be a string");
        auto text = it->get<std::string>();
        if (text.find(kAnchorPlaceholder) == std::string::npos) {
            throw ConfigError("template for " + name + " lacks {anchor}");
        }
        if (i > 0 && text.find(kPriorArtifactsPlaceholder) == std::string::npos) {
            throw ConfigError("template for " + name + " lacks {prior_artifacts}");
        }
        out.templates_[i] = StageTemplate{stage, std::move(text), output_contract(stage)};
    }
    return out;
}

StageTemplates StageTemplates::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read template file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

const StageTemplate& StageTemplates::at(StageKind stage) const {
    if (!is_cua_stage(stage)) throw ContractError("no template for BaselineStep");
    return templates_[static_cast<std::size_t>(stage)];
}

std::string StageTemplates::render(StageKind stage, std::string_view anchor,
                                   std::string_view prior_artifacts) const {
    const auto& t = at(stage);
    const std::string_view src = t.instruction_text;
    std::string out;
    out.reserve(src.size() + anchor.size() + prior_artifacts.size() + t.output_contract.size() + 2);
    std::size_t pos = 0;
    while (pos < src.size()) {
        if (src.substr(pos).starts_with(kAnchorPlaceholder)) {
            out.append(anchor);
            pos += kAnchorPlaceholder.size();
        } else if (src.substr(pos).starts_with(kPriorArtifactsPlaceholder)) {
            out.append(prior_artifacts);
            pos += kPriorArtifactsPlaceholder.size();
        } else {
            out.push_back(src[pos++]);
        }
    }
    out.append("\n\n");
    out.append(t.output_contract);
    return out;
}

std::string StageTemplates::canonical_json() const {
    Json doc = Json::object();
    for (const auto& t : templates_) {
        doc[std::string(to_string(t.stage))] =
            Json{{"instruction_text", t.instruction_text}, {"output_contract", t.output_contract}};
    }
    return detail::canonical_dump(doc);
}

std::string StageTemplates::to_template_file() const {
    Json doc = Json::object();
    for (const auto& t : templates_) doc[std::string(to_string(t.stage))] = t.instruction_text;
    return doc.dump(2) + "\n";
}

bool StageTemplates::operator==(const StageTemplates& other) const {
    for (std::size_t i = 0; i < templates_.size(); ++i) {
        if (templates_[i].stage != other.templates_[i].stage ||
            templates_[i].instruction_text != other.templates_[i].instruction_text ||
            templates_[i].output_contract != other.templates_[i].output_contract) {
            return false;
        }
    }
    return true;
}

}  // namespace govinf
