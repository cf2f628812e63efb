#include "govinf/harness/report_writer.hpp"

#include <fstream>

#include "core/json_util.hpp"
#include "govinf/harness/csv.hpp"

namespace govinf {
namespace {

using detail::Json;

Json ratio_json(const std::optional<double>& r) { return r ? Json(*r) : Json(nullptr); }

Json failure_json(const FailureInfo& f) {
    return Json{{"paradigm", f.paradigm},
                {"code", f.code},
                {"checkpoint", f.checkpoint},
                {"message", f.message},
                {"partial_checkpoints", f.partial_checkpoints}};
}

Json summary_json(const DistributionSummary& s) {
    return Json{{"metric", s.metric},       {"paradigm", s.paradigm},
                {"n", s.n},                 {"median", s.median},
                {"q1", s.q1},               {"q3", s.q3},
                {"whisker_low", s.whisker_low}, {"whisker_high", s.whisker_high},
                {"outliers", s.outliers}};
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

std::vector<std::string> csv_values(const std::string& prompt_id, const MetricReport& r) {
    std::vector<std::string> row{prompt_id, std::string(to_string(r.paradigm))};
    for (auto metric : kScalarMetrics) row.push_back(csv::number(metric_value(r, metric)));
    return row;
}

}  // namespace

std::vector<DistributionSummary> summarize_executions(const std::vector<PairedExecution>& executions) {
    std::vector<DistributionSummary> out;
    auto add = [&](std::string_view metric, std::string_view paradigm, std::vector<double> values) {
        if (values.empty()) return;
        auto s = summarize(values);
        s.metric = metric;
        s.paradigm = paradigm;
        out.push_back(std::move(s));
    };
    for (auto metric : kScalarMetrics) {
        std::vector<double> cua;
        std::vector<double> baseline;
        for (const auto& e : executions) {
            if (!e.ok()) continue;
            cua.push_back(metric_value(*e.cua_report, metric));
            baseline.push_back(metric_value(*e.baseline_report, metric));
        }
        add(metric, to_string(Paradigm::kCua), std::move(cua));
        add(metric, to_string(Paradigm::kBaseline), std::move(baseline));
    }
    for (auto metric : kRatioMetrics) {
        std::vector<double> ratios;
        for (const auto& e : executions) {
            if (!e.ok()) continue;
            if (const auto& r = e.ratios.at(std::string(metric))) ratios.push_back(*r);
        }
        add(metric, "ratio", std::move(ratios));
    }
    return out;
}

std::string report_document(const ExperimentResult& result) {
    Json executions = Json::array();
    for (const auto& e : result.executions) {
        Json ratios = Json::object();
        for (const auto& [metric, r] : e.ratios) ratios[metric] = ratio_json(r);
        Json failures = Json::array();
        for (const auto& f : e.failures) failures.push_back(failure_json(f));
        executions.push_back(Json{
            {"prompt_id", e.prompt_id},
            {"status", e.ok() ? "ok" : "failed"},
            {"cua_trace_ref", e.cua_trace_ref},
            {"baseline_trace_ref", e.baseline_trace_ref},
            {"cua_report", e.cua_report ? Json::parse(serialize_report(*e.cua_report)) : Json(nullptr)},
            {"baseline_report",
             e.baseline_report ? Json::parse(serialize_report(*e.baseline_report)) : Json(nullptr)},
            {"ratios", std::move(ratios)},
            {"failures", std::move(failures)},
        });
    }
    return detail::canonical_dump(Json{{"schema_version", kSchemaVersion},
                                       {"embedder_id", result.embedder_id},
                                       {"run_config_digest", result.run_config_digest},
                                       {"executions", std::move(executions)}}) +
           "\n";
}

void emit_report(const ExperimentResult& result, const std::filesystem::path& out_dir,
                 const ReportOptions& options) {
    const bool any_ok = std::any_of(result.executions.begin(), result.executions.end(),
                                    [](const PairedExecution& e) { return e.ok(); });
    if (!any_ok) throw ContractError("report needs at least one successful pair");

    std::error_code ec;
    std::filesystem::create_directories(out_dir / kRatioDir, ec);
    if (ec) throw IoError("cannot create " + (out_dir / kRatioDir).string() + ": " + ec.message());

    write_file(out_dir / kReportFile, report_document(result));

    std::vector<std::string> header{"prompt_id", "paradigm"};
    header.insert(header.end(), kScalarMetrics.begin(), kScalarMetrics.end());
    std::string executions_csv = csv::row(header);
    for (const auto& e : result.executions) {
        if (!e.ok()) continue;
        executions_csv += csv::row(csv_values(e.prompt_id, *e.cua_report));
        executions_csv += csv::row(csv_values(e.prompt_id, *e.baseline_report));
    }
    write_file(out_dir / kExecutionsCsv, executions_csv);

    for (auto metric : kRatioMetrics) {
        std::string ratio_csv = csv::row({"prompt_id", "cua", "baseline", "ratio"});
        for (const auto& e : result.executions) {
            if (!e.ok()) continue;
            const auto& r = e.ratios.at(std::string(metric));
            ratio_csv += csv::row({e.prompt_id, csv::number(metric_value(*e.cua_report, metric)),
                                   csv::number(metric_value(*e.baseline_report, metric)),
                                   r ? csv::number(*r) : std::string()});
        }
        write_file(out_dir / kRatioDir / (std::string(metric) + ".csv"), ratio_csv);
    }

    const auto summaries = summarize_executions(result.executions);
    Json summary_list = Json::array();
    for (const auto& s : summaries) summary_list.push_back(summary_json(s));
    write_file(out_dir / kSummaryFile,
               detail::canonical_dump(Json{{"summaries", summary_list}}) + "\n");

    std::string failures;
    for (const auto& e : result.executions) {
        for (const auto& f : e.failures) {
            auto j = failure_json(f);
            j["prompt_id"] = e.prompt_id;
            failures += detail::canonical_dump(j) + "\n";
        }
    }
    write_file(out_dir / kFailuresFile, failures);

    if (options.plot_data) {
        // Boxplot coordinates grouped by metric, one box per paradigm or ratio.
        Json plots = Json::object();
        for (const auto& s : summaries) {
            plots[s.metric].push_back(Json{{"label", s.paradigm},
                                           {"n", s.n},
                                           {"q1", s.q1},
                                           {"median", s.median},
                                           {"q3", s.q3},
                                           {"whisker_low", s.whisker_low},
                                           {"whisker_high", s.whisker_high},
                                           {"outliers", s.outliers}});
        }
        write_file(out_dir / kPlotDataFile, detail::canonical_dump(Json{{"boxplots", plots}}) + "\n");
    }
}

}  // namespace govinf
