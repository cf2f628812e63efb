#include "govinf/metrics/report.hpp"

#include "core/json_util.hpp"
#include "govinf/core/validate.hpp"

namespace govinf {

using detail::Json;
using detail::Reader;

MetricReport compute_report(const InferenceTrace& trace, const Embedder& embedder) {
    if (const auto v = validate_trace(trace); !v.ok()) {
        throw ContractError("cannot compute metrics for an invalid trace: " +
                            v.violations.front().code);
    }
    MetricReport r;
    r.trace_id = trace_id(trace);
    r.paradigm = trace.paradigm;
    r.lwc = compute_lwc(trace);
    auto tds = compute_tds(trace, embedder);
    r.tds = tds.tds;
    r.tds_per_stage = std::move(tds.per_stage);
    r.eas = compute_eas(trace, embedder);
    r.aee = compute_aee(r.tds, r.eas);
    const auto ici = compute_ici(trace);
    r.ici = ici.ici;
    r.ici_n = ici.ici_n;
    r.ies = compute_ies(trace);
    const auto tokens = token_totals(trace);
    r.tokens_reasoning = tokens.reasoning;
    r.tokens_measurement = tokens.measurement;
    r.embedder_id = embedder.id();
    return r;
}

double metric_value(const MetricReport& r, std::string_view metric) {
    if (metric == "lwc") return static_cast<double>(r.lwc);
    if (metric == "tds") return r.tds;
    if (metric == "eas") return r.eas;
    if (metric == "aee") return r.aee;
    if (metric == "ici") return static_cast<double>(r.ici);
    if (metric == "ici_n") return r.ici_n;
    if (metric == "ies") return r.ies;
    if (metric == "tokens_reasoning") return static_cast<double>(r.tokens_reasoning);
    if (metric == "tokens_measurement") return static_cast<double>(r.tokens_measurement);
    throw ContractError("unknown metric " + std::string(metric));
}

std::string serialize_report(const MetricReport& r) {
    Json per_stage = Json::array();
    for (const auto& s : r.tds_per_stage) {
        per_stage.push_back(Json{{"checkpoint", s.checkpoint}, {"distance", s.distance}});
    }
    return detail::canonical_dump(Json{
        {"trace_id", r.trace_id},
        {"paradigm", to_string(r.paradigm)},
        {"lwc", r.lwc},
        {"tds", r.tds},
        {"tds_per_stage", std::move(per_stage)},
        {"eas", r.eas},
        {"aee", r.aee},
        {"ici", r.ici},
        {"ici_n", r.ici_n},
        {"ies", r.ies},
        {"tokens_reasoning", r.tokens_reasoning},
        {"tokens_measurement", r.tokens_measurement},
        {"embedder_id", r.embedder_id},
    });
}

MetricReport deserialize_report(std::string_view bytes) {
    const Json doc = detail::parse_document(bytes);
    const Reader root(doc, "$");
    root.expect_keys({"trace_id", "paradigm", "lwc", "tds", "tds_per_stage", "eas", "aee", "ici",
                      "ici_n", "ies", "tokens_reasoning", "tokens_measurement", "embedder_id"});
    MetricReport r;
    r.trace_id = root.field("trace_id").as_string();
    const auto paradigm = root.field("paradigm");
    auto p = paradigm_from_string(paradigm.as_string());
    if (!p) paradigm.fail("unknown paradigm");
    r.paradigm = *p;
    r.lwc = static_cast<std::size_t>(root.field("lwc").as_uint());
    r.tds = root.field("tds").as_double();
    const auto stages = root.field("tds_per_stage");
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const auto s = stages.element(i);
        s.expect_keys({"checkpoint", "distance"});
        r.tds_per_stage.push_back({static_cast<std::size_t>(s.field("checkpoint").as_uint()),
                                   s.field("distance").as_double()});
    }
    r.eas = root.field("eas").as_double();
    r.aee = root.field("aee").as_double();
    r.ici = static_cast<std::size_t>(root.field("ici").as_uint());
    r.ici_n = root.field("ici_n").as_double();
    r.ies = root.field("ies").as_double();
    r.tokens_reasoning = root.field("tokens_reasoning").as_uint();
    r.tokens_measurement = root.field("tokens_measurement").as_uint();
    r.embedder_id = root.field("embedder_id").as_string();
    return r;
}

}  // namespace govinf
