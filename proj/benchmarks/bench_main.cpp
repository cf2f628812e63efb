#include <benchmark/benchmark.h>

#include <string>

#include "govinf/backend/scripted_provider.hpp"
#include "govinf/core/block.hpp"
#include "govinf/core/serialize.hpp"
#include "govinf/metrics/report.hpp"
#include "govinf/workflow/baseline_workflow.hpp"
#include "govinf/workflow/cua_workflow.hpp"
#include "json.hpp"

namespace {

using govinf::ScriptEntry;
using Json = nlohmann::json;

std::string paragraph(std::size_t words) {
    static const char* vocab[] = {"soil", "carbon", "cover", "crops", "agroforestry", "yield",
                                  "water", "policy", "prácticas", "σύνθεση"};
    std::string out;
    for (std::size_t i = 0; i < words; ++i) {
        if (i) out += ' ';
        out += vocab[(i * 7 + 3) % 10];
    }
    return out;
}

std::vector<ScriptEntry> cua_script() {
    std::vector<ScriptEntry> out;
    for (int i = 1; i <= 5; ++i) {
        Json block{{"objective", "Objective of stage " + std::to_string(i) + "."}};
        if (i == 2 || i == 3) {
            block["instruments"] = Json::array({Json{{"class", "Experimental"}, {"name", "field trial"}},
                                                Json{{"class", "Economic"}, {"name", "cost model"}}});
        }
        out.push_back({paragraph(120) + "\n" + std::string(govinf::kBlockOpen) + "\n" + block.dump() + "\n" +
                           std::string(govinf::kBlockClose) + "\n", 300, 200});
    }
    return out;
}

std::vector<ScriptEntry> baseline_script() {
    std::vector<ScriptEntry> out;
    for (int i = 0; i < 5; ++i) out.push_back({paragraph(120) + ". More text follows.", 100, 80});
    return out;
}

const govinf::EpistemicAnchor kAnchor("bench", "How do cover crops change soil organic carbon?");

void BM_Embed(benchmark::State& state) {
    const govinf::ReferenceEmbedder e;
    const auto text = paragraph(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(e.embed(text));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Embed)->Arg(16)->Arg(256)->Arg(4096);

void BM_CuaRun(benchmark::State& state) {
    const auto script = cua_script();
    const govinf::CuaConfig config;
    for (auto _ : state) {
        govinf::ScriptedProvider p(script);
        benchmark::DoNotOptimize(govinf::run_cua(kAnchor, p, config));
    }
}
BENCHMARK(BM_CuaRun);

void BM_BaselineRun(benchmark::State& state) {
    const auto script = baseline_script();
    const govinf::BaselineConfig config;
    for (auto _ : state) {
        govinf::ScriptedProvider p(script);
        benchmark::DoNotOptimize(govinf::run_baseline(kAnchor, p, config));
    }
}
BENCHMARK(BM_BaselineRun);

void BM_ComputeReport(benchmark::State& state) {
    govinf::ScriptedProvider p(cua_script());
    const auto trace = govinf::run_cua(kAnchor, p, govinf::CuaConfig{});
    const govinf::ReferenceEmbedder e;
    for (auto _ : state) benchmark::DoNotOptimize(govinf::compute_report(trace, e));
}
BENCHMARK(BM_ComputeReport);

void BM_TraceRoundTrip(benchmark::State& state) {
    govinf::ScriptedProvider p(cua_script());
    const auto trace = govinf::run_cua(kAnchor, p, govinf::CuaConfig{});
    for (auto _ : state) {
        const auto bytes = govinf::serialize_trace(trace);
        benchmark::DoNotOptimize(govinf::deserialize_trace(bytes));
    }
}
BENCHMARK(BM_TraceRoundTrip);

}  // namespace

BENCHMARK_MAIN();
