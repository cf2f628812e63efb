#include "govinf/audit/audit.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "core/json_util.hpp"
#include "govinf/audit/store.hpp"
#include "govinf/backend/embedder.hpp"
#include "govinf/harness/experiment.hpp"
#include "govinf/metrics/report.hpp"

namespace govinf {
namespace {

using detail::Json;
using detail::Reader;

constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

std::string read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read report " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool differs(double stored, double recomputed, double tolerance) {
    const bool a = std::isnan(stored);
    const bool b = std::isnan(recomputed);
    if (a || b) return a != b;
    return !(std::fabs(stored - recomputed) <= tolerance);
}

class Comparison {
public:
    Comparison(AuditVerdict& verdict, double tolerance) : verdict_(verdict), tolerance_(tolerance) {}

    void check(const std::string& id, std::string metric, double stored, double recomputed) {
        if (differs(stored, recomputed, tolerance_)) {
            verdict_.mismatches.push_back({id, std::move(metric), stored, recomputed});
        }
    }

private:
    AuditVerdict& verdict_;
    double tolerance_;
};

double stored_number(const Reader& r) {
    if (r.node().is_null()) return kUndefined;
    return r.as_double();
}

void compare_report(const Reader& stored, const MetricReport& fresh, Comparison& cmp) {
    const auto& id = fresh.trace_id;
    for (auto metric : kScalarMetrics) {
        cmp.check(id, std::string(metric), stored.field(metric).as_double(),
                  metric_value(fresh, metric));
    }
    const auto stages = stored.field("tds_per_stage");
    const std::size_t n = std::max(stages.size(), fresh.tds_per_stage.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double s = i < stages.size() ? stages.element(i).field("distance").as_double() : kUndefined;
        const double f = i < fresh.tds_per_stage.size() ? fresh.tds_per_stage[i].distance : kUndefined;
        cmp.check(id, "tds_per_stage[" + std::to_string(i + 1) + "]", s, f);
    }
}

}  // namespace

std::string_view to_string(AuditStatus status) {
    switch (status) {
        case AuditStatus::kClean: return "CLEAN";
        case AuditStatus::kMismatch: return "MISMATCH";
        case AuditStatus::kMissingTrace: return "MISSING_TRACE";
        case AuditStatus::kNotIndependentlyAuditable: return "NOT_INDEPENDENTLY_AUDITABLE";
    }
    return "UNKNOWN";
}

AuditVerdict audit_recompute(const std::filesystem::path& store_path,
                             const std::filesystem::path& report_path, double tolerance) {
    const auto report_text = read_all(report_path);
    const Json doc = detail::parse_document(report_text);
    const Reader root(doc, "$");

    AuditVerdict verdict;
    verdict.embedder_id = root.field("embedder_id").as_string();
    const auto embedder = make_embedder_from_id(verdict.embedder_id);
    if (!embedder || !embedder->is_deterministic()) {
        verdict.status = AuditStatus::kNotIndependentlyAuditable;
        return verdict;
    }

    // Later lines win if a trace id was appended more than once.
    std::map<std::string, InferenceTrace> traces;
    for (auto& t : load_traces(store_path)) {
        auto id = trace_id(t);
        traces.insert_or_assign(std::move(id), std::move(t));
    }

    Comparison cmp(verdict, tolerance);
    const auto executions = root.field("executions");
    for (std::size_t i = 0; i < executions.size(); ++i) {
        const auto e = executions.element(i);
        if (e.field("status").as_string() != "ok") continue;

        std::optional<MetricReport> fresh[2];
        const char* keys[2] = {"cua_report", "baseline_report"};
        for (int k = 0; k < 2; ++k) {
            const auto stored = e.field(keys[k]);
            const auto id = stored.field("trace_id").as_string();
            if (stored.field("embedder_id").as_string() != verdict.embedder_id) {
                stored.field("embedder_id").fail("embedder differs from the report's embedder_id");
            }
            auto it = traces.find(id);
            if (it == traces.end()) {
                verdict.missing_traces.push_back(id);
                continue;
            }
            fresh[k] = compute_report(it->second, *embedder);
            compare_report(stored, *fresh[k], cmp);
            ++verdict.reports_checked;
        }
        if (!fresh[0] || !fresh[1]) continue;

        const auto ratios = compute_ratios(*fresh[0], *fresh[1]);
        const auto stored_ratios = e.field("ratios");
        const auto prompt_id = e.field("prompt_id").as_string();
        for (const auto& [metric, value] : ratios) {
            cmp.check(prompt_id, "ratio." + metric, stored_number(stored_ratios.field(metric)),
                      value.value_or(kUndefined));
        }
    }

    if (!verdict.missing_traces.empty()) {
        verdict.status = AuditStatus::kMissingTrace;
    } else if (!verdict.mismatches.empty()) {
        verdict.status = AuditStatus::kMismatch;
    }
    return verdict;
}

std::string render_verdict(const AuditVerdict& v) {
    std::ostringstream out;
    out.precision(17);
    out << "audit: " << to_string(v.status) << " (embedder " << v.embedder_id << ", "
        << v.reports_checked << " reports checked)\n";
    for (const auto& id : v.missing_traces) out << "MISSING_TRACE " << id << "\n";
    for (const auto& m : v.mismatches) {
        out << "MISMATCH " << m.trace_id << " " << m.metric << " stored=" << m.stored
            << " recomputed=" << m.recomputed << "\n";
    }
    return out.str();
}

}  // namespace govinf
