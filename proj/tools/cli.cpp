#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>

#include "CLI11.hpp"

#include "govinf/audit/audit.hpp"
#include "govinf/audit/store.hpp"
#include "govinf/core/errors.hpp"
#include "govinf/harness/config.hpp"
#include "govinf/harness/experiment.hpp"
#include "govinf/harness/prompt_set.hpp"
#include "govinf/harness/report_writer.hpp"
#include "govinf/metrics/report.hpp"

namespace govinf::cli {
namespace fs = std::filesystem;

namespace {

// Bad invocation detected after parsing (missing backend, bad combination).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BackendFlags {
    std::string config;
    std::string backend;
    std::string script;
    std::string extractor;
};

struct Options {
    BackendFlags backend;
    std::string prompts;
    std::string out;
    std::string paradigm = "both";
    std::string prompt;
    std::string store;
    std::string report;
    bool no_plot_data = false;
};

void add_backend_flags(CLI::App& cmd, BackendFlags& f) {
    cmd.add_option("--config", f.config, "Run configuration JSON")->check(CLI::ExistingFile);
    cmd.add_option("--backend", f.backend, "Backend override")
        ->check(CLI::IsMember({"http", "scripted"}));
    cmd.add_option("--script", f.script, "Script file for the scripted backend")
        ->check(CLI::ExistingFile);
    cmd.add_option("--extractor", f.extractor, "Baseline objective extractor")
        ->check(CLI::IsMember({"heuristic", "model"}));
}

fs::path under_out(const std::string& out, const std::string& path) {
    fs::path p(path);
    if (p.is_absolute() || out.empty()) return p;
    return fs::path(out) / p;
}

RunConfig resolve_config(const BackendFlags& f) {
    RunConfig config = f.config.empty() ? RunConfig{} : load_config(f.config);
    if (!f.backend.empty()) config.backend.kind = *backend_kind_from_string(f.backend);
    if (!f.script.empty()) {
        config.backend.script = f.script;
        if (f.backend.empty()) config.backend.kind = BackendKind::kScripted;
    }
    if (!f.extractor.empty()) config.baseline.extractor = *extractor_from_string(f.extractor);

    switch (config.backend.kind) {
        case BackendKind::kNone:
            throw UsageError("no backend configured: pass --backend or a --config with a backend");
        case BackendKind::kScripted:
            if (config.backend.script.empty()) throw UsageError("--backend scripted needs --script");
            break;
        case BackendKind::kHttp:
            if (config.backend.url.empty()) throw UsageError("--backend http needs backend.url in --config");
            break;
    }
    return config;
}

// Everything a run needs, built once from the resolved configuration.
struct Session {
    RunConfig config;
    std::unique_ptr<ProviderSource> providers;
    std::unique_ptr<Embedder> embedder;
    ExperimentContext context;

    explicit Session(const BackendFlags& flags) : config(resolve_config(flags)) {
        providers = make_provider_source(config.backend);
        embedder = make_embedder(config.embedder);
        const auto digest = run_config_digest(config, providers->digest_material(), embedder->id());
        context.providers = providers.get();
        context.embedder = embedder.get();
        context.cua = CuaConfig{config.sampling, config.templates, digest};
        context.baseline = config.baseline;
        context.baseline.sampling = config.sampling;
        context.baseline.run_config_digest = digest;
        context.max_in_flight = config.max_in_flight;
    }
};

int cmd_run(const Options& o, std::ostream& out) {
    Session s(o.backend);
    const EpistemicAnchor anchor("cli", o.prompt);
    const bool cua = o.paradigm != "baseline";
    const bool baseline = o.paradigm != "cua";

    std::vector<InferenceTrace> traces;
    if (cua) {
        auto provider = s.providers->provider_for(anchor.id(), InvocationRole::kCua);
        traces.push_back(run_cua(anchor, *provider, s.context.cua));
    }
    if (baseline) {
        auto provider = s.providers->provider_for(anchor.id(), InvocationRole::kBaseline);
        std::shared_ptr<ModelProvider> extractor;
        if (s.context.baseline.extractor == ExtractorMode::kModel) {
            extractor = s.providers->provider_for(anchor.id(), InvocationRole::kExtraction);
        }
        traces.push_back(run_baseline(anchor, *provider, s.context.baseline, extractor.get()));
    }
    for (const auto& t : traces) out << serialize_report(compute_report(t, *s.embedder)) << "\n";
    if (!o.out.empty()) store_traces(fs::path(o.out) / kStoreFile, traces);
    return kSuccess;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.paradigm != "both") throw UsageError("compare always runs both paradigms");
    Session s(o.backend);
    const auto prompts = load_prompt_set(o.prompts);
    const auto result = run_experiment(prompts, s.context);

    std::size_t ok = 0;
    for (const auto& e : result.executions) {
        if (e.ok()) {
            ++ok;
            continue;
        }
        for (const auto& f : e.failures) {
            err << "failed " << e.prompt_id << " [" << f.paradigm << "] " << f.code << ": "
                << f.message << "\n";
        }
    }
    if (ok == 0) {
        err << "no prompt completed both runs\n";
        return kRuntime;
    }
    fs::create_directories(o.out);
    store_traces(fs::path(o.out) / kStoreFile, result.traces);
    emit_report(result, o.out, ReportOptions{!o.no_plot_data});
    out << ok << "/" << result.executions.size() << " pairs completed; output in " << o.out << "\n";
    return kSuccess;
}

fs::path store_path(const Options& o) {
    if (!o.store.empty()) return under_out(o.out, o.store);
    if (o.out.empty()) throw UsageError("pass --out or --store");
    return fs::path(o.out) / kStoreFile;
}

int cmd_metrics(const Options& o, std::ostream& out) {
    EmbedderConfig embedder_config;
    if (!o.backend.config.empty()) embedder_config = load_config(o.backend.config).embedder;
    const auto embedder = make_embedder(embedder_config);
    for (const auto& t : load_traces(store_path(o))) {
        out << serialize_report(compute_report(t, *embedder)) << "\n";
    }
    return kSuccess;
}

int cmd_audit(const Options& o, std::ostream& out) {
    fs::path report;
    if (!o.report.empty()) {
        report = under_out(o.out, o.report);
    } else if (!o.out.empty()) {
        report = fs::path(o.out) / kReportFile;
    } else {
        throw UsageError("pass --out or --report");
    }
    const auto verdict = audit_recompute(store_path(o), report);
    out << render_verdict(verdict);
    switch (verdict.status) {
        case AuditStatus::kClean: return kSuccess;
        case AuditStatus::kNotIndependentlyAuditable: return kRuntime;
        case AuditStatus::kMismatch:
        case AuditStatus::kMissingTrace: return kAuditMismatch;
    }
    return kRuntime;
}

int cmd_validate(const Options& o, std::ostream& out) {
    std::size_t bad = 0;
    const auto lines = scan_store(store_path(o));
    for (const auto& line : lines) {
        if (!line.trace) {
            ++bad;
            out << "line " << line.line << ": " << line.parse_error << "\n";
            continue;
        }
        for (const auto& v : line.validation.violations) {
            out << "line " << line.line << " " << trace_id(*line.trace) << ": " << v.code;
            if (!v.detail.empty()) out << " (" << v.detail << ")";
            out << "\n";
        }
        if (!line.validation.ok()) ++bad;
    }
    out << lines.size() - bad << "/" << lines.size() << " traces valid\n";
    return bad == 0 ? kSuccess : kRuntime;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Governed-inference orchestration and evaluation", "govinf"};
    app.require_subcommand(1, 1);
    Options o;

    auto* run = app.add_subcommand("run", "Run one prompt and print its metric reports");
    run->add_option("prompt", o.prompt, "Prompt text")->required();
    run->add_option("--paradigm", o.paradigm, "cua, baseline or both")
        ->check(CLI::IsMember({"cua", "baseline", "both"}));
    run->add_option("--out", o.out, "Also append the traces to <out>/traces.jsonl");
    add_backend_flags(*run, o.backend);

    auto* compare = app.add_subcommand("compare", "Run the paired protocol over a prompt set");
    compare->add_option("--prompts", o.prompts, "Prompt set file")->required()->check(CLI::ExistingFile);
    compare->add_option("--out", o.out, "Output directory")->required();
    compare->add_option("--paradigm", o.paradigm, "Must be both")
        ->check(CLI::IsMember({"cua", "baseline", "both"}));
    compare->add_flag("--no-plot-data", o.no_plot_data, "Skip plot_data.json");
    add_backend_flags(*compare, o.backend);

    auto* metrics = app.add_subcommand("metrics", "Recompute metric reports from a store");
    metrics->add_option("--out", o.out, "Directory holding traces.jsonl");
    metrics->add_option("--store", o.store, "Store file (relative to --out)");
    metrics->add_option("--config", o.backend.config, "Configuration naming the embedder")
        ->check(CLI::ExistingFile);

    auto* audit = app.add_subcommand("audit", "Recompute and compare a stored report");
    audit->add_option("--out", o.out, "Directory holding traces.jsonl and reports.json");
    audit->add_option("--store", o.store, "Store file (relative to --out)");
    audit->add_option("--report", o.report, "Report file (relative to --out)");

    auto* validate = app.add_subcommand("validate", "Validate every trace in a store");
    validate->add_option("--out", o.out, "Directory holding traces.jsonl");
    validate->add_option("--store", o.store, "Store file (relative to --out)");

    std::vector<const char*> argv{"govinf"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return e.get_exit_code() == 0 ? kSuccess : kUsage;
    }

    try {
        if (run->parsed()) return cmd_run(o, out);
        if (compare->parsed()) return cmd_compare(o, out, err);
        if (metrics->parsed()) return cmd_metrics(o, out);
        if (audit->parsed()) return cmd_audit(o, out);
        if (validate->parsed()) return cmd_validate(o, out);
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const ConfigError& e) {
        err << "config: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kRuntime;
    }
    return kUsage;
}

}  // namespace govinf::cli
