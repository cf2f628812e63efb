#include "govinf/core/serialize.hpp"

#include "core/json_util.hpp"
#include "govinf/core/errors.hpp"
#include "govinf/core/validate.hpp"

namespace govinf {
namespace {

using detail::Json;
using detail::Reader;

Json optional_string(const std::optional<std::string>& s) {
    return s ? Json(*s) : Json(nullptr);
}

Json to_json(const Checkpoint& cp) {
    return Json{
        {"index", cp.index},
        {"stage", to_string(cp.stage)},
        {"objective", cp.objective},
        {"raw_output", cp.raw_output},
        {"prompt_tokens", cp.prompt_tokens},
        {"completion_tokens", cp.completion_tokens},
        {"measurement_tokens", cp.measurement_tokens},
    };
}

Json to_json(const InstrumentDeclaration& d) {
    return Json{
        {"class", to_string(d.uci_class)},
        {"name", d.name},
        {"purpose", optional_string(d.purpose)},
        {"scope", optional_string(d.scope)},
        {"limitations", optional_string(d.limitations)},
        {"institutional_embedding", optional_string(d.institutional_embedding)},
        {"source_checkpoint", d.source_checkpoint},
    };
}

Json to_json(const TechnicalSynthesis& ts) {
    Json stages = Json::array();
    for (auto s : ts.stages_recorded) stages.push_back(to_string(s));
    Json classes = Json::array();
    for (auto c : ts.uci_classes_declared) classes.push_back(to_string(c));
    Json availability = Json::object();
    for (const auto& [name, available] : ts.metric_availability) availability[name] = available;
    return Json{
        {"stages_recorded", std::move(stages)},
        {"uci_classes_declared", std::move(classes)},
        {"metric_availability", std::move(availability)},
        {"body", ts.body},
    };
}

StageKind read_stage(const Reader& r) {
    auto s = stage_from_string(r.as_string());
    if (!s) r.fail("unknown stage kind");
    return *s;
}

UciClass read_class(const Reader& r) {
    auto c = uci_class_from_string(r.as_string());
    if (!c) r.fail("unknown UCI class");
    return *c;
}

std::size_t read_index(const Reader& r) { return static_cast<std::size_t>(r.as_uint()); }

Checkpoint read_checkpoint(const Reader& r) {
    r.expect_keys({"index", "stage", "objective", "raw_output", "prompt_tokens",
                   "completion_tokens", "measurement_tokens"});
    Checkpoint cp;
    cp.index = read_index(r.field("index"));
    cp.stage = read_stage(r.field("stage"));
    cp.objective = r.field("objective").as_string();
    cp.raw_output = r.field("raw_output").as_string();
    cp.prompt_tokens = r.field("prompt_tokens").as_uint();
    cp.completion_tokens = r.field("completion_tokens").as_uint();
    cp.measurement_tokens = r.field("measurement_tokens").as_uint();
    return cp;
}

InstrumentDeclaration read_declaration(const Reader& r) {
    r.expect_keys({"class", "name", "purpose", "scope", "limitations", "institutional_embedding",
                   "source_checkpoint"});
    InstrumentDeclaration d;
    d.uci_class = read_class(r.field("class"));
    d.name = r.field("name").as_string();
    d.purpose = r.field("purpose").as_optional_string();
    d.scope = r.field("scope").as_optional_string();
    d.limitations = r.field("limitations").as_optional_string();
    d.institutional_embedding = r.field("institutional_embedding").as_optional_string();
    d.source_checkpoint = read_index(r.field("source_checkpoint"));
    return d;
}

TechnicalSynthesis read_technical_synthesis(const Reader& r) {
    r.expect_keys({"stages_recorded", "uci_classes_declared", "metric_availability", "body"});
    TechnicalSynthesis ts;
    const auto stages = r.field("stages_recorded");
    for (std::size_t i = 0; i < stages.size(); ++i) {
        ts.stages_recorded.push_back(read_stage(stages.element(i)));
    }
    const auto classes = r.field("uci_classes_declared");
    for (std::size_t i = 0; i < classes.size(); ++i) {
        ts.uci_classes_declared.insert(read_class(classes.element(i)));
    }
    const auto availability = r.field("metric_availability");
    availability.expect_object();
    for (const auto& item : availability.node().items()) {
        ts.metric_availability[item.key()] =
            Reader(item.value(), availability.path() + "." + item.key()).as_bool();
    }
    ts.body = r.field("body").as_string();
    return ts;
}

}  // namespace

std::string serialize_trace(const InferenceTrace& trace) {
    const auto validation = validate_trace(trace);
    if (!validation.ok()) {
        throw ContractError("cannot serialize invalid trace: " + validation.violations.front().code);
    }

    Json checkpoints = Json::array();
    for (const auto& cp : trace.checkpoints) checkpoints.push_back(to_json(cp));
    Json declarations = Json::array();
    for (const auto& d : trace.declarations) declarations.push_back(to_json(d));

    const Json doc{
        {"schema_version", trace.schema_version},
        {"paradigm", to_string(trace.paradigm)},
        {"anchor", Json{{"id", trace.anchor.id()}, {"text", trace.anchor.text()}}},
        {"checkpoints", std::move(checkpoints)},
        {"declarations", std::move(declarations)},
        {"synthesis_text", trace.synthesis_text},
        {"technical_synthesis",
         trace.technical_synthesis ? to_json(*trace.technical_synthesis) : Json(nullptr)},
        {"convergence_index", trace.convergence_index},
        {"run_config_digest", trace.run_config_digest},
    };
    try {
        return detail::canonical_dump(doc);
    } catch (const Json::type_error& e) {
        throw ContractError(std::string("trace contains invalid UTF-8: ") + e.what());
    }
}

InferenceTrace deserialize_trace(std::string_view bytes) {
    const Json doc = detail::parse_document(bytes);
    const Reader root(doc, "$");
    root.expect_object();

    const long long version = root.field("schema_version").as_int();
    if (version != kSchemaVersion) throw VersionError(version);

    root.expect_keys({"schema_version", "paradigm", "anchor", "checkpoints", "declarations",
                      "synthesis_text", "technical_synthesis", "convergence_index",
                      "run_config_digest"});

    InferenceTrace t;
    t.schema_version = static_cast<int>(version);

    const auto paradigm = root.field("paradigm");
    auto p = paradigm_from_string(paradigm.as_string());
    if (!p) paradigm.fail("unknown paradigm");
    t.paradigm = *p;

    const auto anchor = root.field("anchor");
    anchor.expect_keys({"id", "text"});
    t.anchor = EpistemicAnchor(anchor.field("id").as_string(), anchor.field("text").as_string());

    const auto checkpoints = root.field("checkpoints");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        t.checkpoints.push_back(read_checkpoint(checkpoints.element(i)));
    }
    const auto declarations = root.field("declarations");
    for (std::size_t i = 0; i < declarations.size(); ++i) {
        t.declarations.push_back(read_declaration(declarations.element(i)));
    }
    t.synthesis_text = root.field("synthesis_text").as_string();
    if (auto ts = root.optional_field("technical_synthesis")) {
        t.technical_synthesis = read_technical_synthesis(*ts);
    } else {
        (void)root.field("technical_synthesis");  // the key is required even when null
    }
    t.convergence_index = read_index(root.field("convergence_index"));
    t.run_config_digest = root.field("run_config_digest").as_string();
    return t;
}

}  // namespace govinf
