#include "govinf/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace govinf {
namespace {

struct PairOutcome {
    PairedExecution execution;
    std::optional<InferenceTrace> cua;
    std::optional<InferenceTrace> baseline;
};

template <typename Fn>
std::optional<InferenceTrace> guarded_run(std::string_view paradigm,
                                          std::vector<FailureInfo>& failures, Fn&& run) {
    try {
        return run();
    } catch (const AbortedRunError& e) {
        failures.push_back({std::string(paradigm), e.cause_code(), e.checkpoint(), e.what(),
                            e.partial().size()});
    } catch (const Error& e) {
        failures.push_back({std::string(paradigm), e.code(), 0, e.what(), 0});
    } catch (const std::exception& e) {
        failures.push_back({std::string(paradigm), "INTERNAL", 0, e.what(), 0});
    }
    return std::nullopt;
}

PairOutcome run_pair(const Prompt& prompt, const ExperimentContext& ctx) {
    PairOutcome out;
    auto& pe = out.execution;
    pe.prompt_id = prompt.id;
    pe.cua_trace_ref = trace_id(prompt.id, Paradigm::kCua);
    pe.baseline_trace_ref = trace_id(prompt.id, Paradigm::kBaseline);
    const EpistemicAnchor anchor(prompt.id, prompt.text);

    out.cua = guarded_run(to_string(Paradigm::kCua), pe.failures, [&] {
        auto provider = ctx.providers->provider_for(prompt.id, InvocationRole::kCua);
        return run_cua(anchor, *provider, ctx.cua);
    });
    out.baseline = guarded_run(to_string(Paradigm::kBaseline), pe.failures, [&] {
        auto provider = ctx.providers->provider_for(prompt.id, InvocationRole::kBaseline);
        std::shared_ptr<ModelProvider> extractor;
        if (ctx.baseline.extractor == ExtractorMode::kModel) {
            extractor = ctx.providers->provider_for(prompt.id, InvocationRole::kExtraction);
        }
        return run_baseline(anchor, *provider, ctx.baseline, extractor.get());
    });
    if (!out.cua || !out.baseline) return out;

    try {
        pe.cua_report = compute_report(*out.cua, *ctx.embedder);
        pe.baseline_report = compute_report(*out.baseline, *ctx.embedder);
        pe.ratios = compute_ratios(*pe.cua_report, *pe.baseline_report);
    } catch (const std::exception& e) {
        const auto* err = dynamic_cast<const Error*>(&e);
        pe.failures.push_back({"metrics", err ? err->code() : "INTERNAL", 0, e.what(), 0});
        pe.cua_report.reset();
        pe.baseline_report.reset();
        pe.ratios.clear();
    }
    return out;
}

}  // namespace

RatioMap compute_ratios(const MetricReport& cua, const MetricReport& baseline) {
    if (cua.embedder_id != baseline.embedder_id) {
        throw ContractError("reports from different embedders are not comparable");
    }
    RatioMap ratios;
    for (auto metric : kRatioMetrics) {
        const double denominator = metric_value(baseline, metric);
        ratios[std::string(metric)] =
            denominator > 0.0 ? std::optional(metric_value(cua, metric) / denominator) : std::nullopt;
    }
    return ratios;
}

ExperimentResult run_experiment(const std::vector<Prompt>& prompts, const ExperimentContext& ctx) {
    if (prompts.empty()) throw ConfigError("prompt set is empty");
    if (ctx.providers == nullptr || ctx.embedder == nullptr) {
        throw ConfigError("experiment needs a provider source and an embedder");
    }

    std::vector<PairOutcome> outcomes(prompts.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < prompts.size(); i = next++) {
            outcomes[i] = run_pair(prompts[i], ctx);
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(ctx.max_in_flight, 1, prompts.size());
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    }

    ExperimentResult result;
    result.run_config_digest = ctx.cua.run_config_digest;
    result.embedder_id = ctx.embedder->id();
    for (auto& o : outcomes) {
        if (o.execution.ok()) {
            result.traces.push_back(std::move(*o.cua));
            result.traces.push_back(std::move(*o.baseline));
        }
        result.executions.push_back(std::move(o.execution));
    }
    return result;
}

}  // namespace govinf
