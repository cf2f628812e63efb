#include <gtest/gtest.h>

#include "govinf/core/serialize.hpp"
#include "govinf/harness/experiment.hpp"
#include "builders.hpp"

namespace govinf {
namespace {

using testing::declaration;

const testing::Objectives kObjectives{"Frame soil.", "Map tools.", "Design study.", "Synthesize.",
                                      "Narrate."};
const std::array<std::string, 5> kBaselineOutputs{"Soils matter.", "Cover crops help.", "Tillage too.",
                                                  "Policy matters.", "Soils benefit overall."};

ScriptBook standard_book(std::uint64_t cua_tokens_per_call = 1000, std::uint64_t baseline_tokens_per_call = 200) {
    ScriptBook book;
    book.set(InvocationRole::kCua,
             testing::cua_script(kObjectives,
                                 {declaration(UciClass::kExperimental, "trials", 2, 4),
                                  declaration(UciClass::kRegulatory, "rules", 3, 2),
                                  declaration(UciClass::kEconomic, "budgets", 3, 0)},
                                 cua_tokens_per_call / 2, cua_tokens_per_call / 2, "Soils benefit."));
    book.set(InvocationRole::kBaseline,
             testing::baseline_script(kBaselineOutputs, baseline_tokens_per_call / 2, baseline_tokens_per_call / 2));
    return book;
}

std::vector<Prompt> prompts(std::size_t n) {
    std::vector<Prompt> out;
    for (std::size_t i = 1; i <= n; ++i) {
        out.push_back({"q" + std::to_string(i), "How do cover crops change soil " + std::to_string(i) + "?"});
    }
    return out;
}

struct Fixture {
    ScriptedProviderSource source;
    ReferenceEmbedder embedder;
    ExperimentContext context;

    explicit Fixture(ScriptBook book, std::size_t in_flight = 4) : source(std::move(book)) {
        context.providers = &source;
        context.embedder = &embedder;
        context.max_in_flight = in_flight;
        context.cua.run_config_digest = "digest";
        context.baseline.run_config_digest = "digest";
    }
};

TEST(Experiment, SinglePromptPair) {
    Fixture f(standard_book());
    const auto r = run_experiment(prompts(1), f.context);
    ASSERT_EQ(r.executions.size(), 1u);
    const auto& e = r.executions[0];
    ASSERT_TRUE(e.ok());
    EXPECT_EQ(e.cua_trace_ref, "q1/cua");
    EXPECT_EQ(e.baseline_trace_ref, "q1/baseline");
    EXPECT_DOUBLE_EQ(*e.ratios.at("lwc"), 0.8);
    EXPECT_EQ(r.traces.size(), 2u);
    EXPECT_EQ(r.run_config_digest, "digest");
    EXPECT_EQ(r.embedder_id, f.embedder.id());
}

TEST(Experiment, StructuralSeparationAndUndefinedRatios) {
    Fixture f(standard_book());
    const auto r = run_experiment(prompts(3), f.context);
    for (const auto& e : r.executions) {
        ASSERT_TRUE(e.ok());
        EXPECT_EQ(e.cua_report->ici, 3u);
        EXPECT_EQ(e.baseline_report->ici, 0u);
        EXPECT_EQ(e.baseline_report->ies, 0.0);
        EXPECT_FALSE(e.ratios.at("ici").has_value());
        EXPECT_FALSE(e.ratios.at("ici_n").has_value());
        EXPECT_FALSE(e.ratios.at("ies").has_value());
        EXPECT_EQ(e.ratios.count("tokens_measurement"), 0u);
    }
}

TEST(Experiment, RatioConsistency) {
    Fixture f(standard_book());
    const auto r = run_experiment(prompts(4), f.context);
    for (const auto& e : r.executions) {
        for (const auto& [metric, ratio] : e.ratios) {
            const double b = metric_value(*e.baseline_report, metric);
            if (b > 0) {
                ASSERT_TRUE(ratio.has_value());
                EXPECT_NEAR(*ratio * b, metric_value(*e.cua_report, metric), 1e-9) << metric;
            } else {
                EXPECT_FALSE(ratio.has_value()) << metric;
            }
        }
    }
}

TEST(Experiment, TokenRatio) {
    Fixture f(standard_book(1000, 200));
    const auto r = run_experiment(prompts(1), f.context);
    const auto& e = r.executions[0];
    EXPECT_EQ(e.cua_report->tokens_reasoning, 5000u);
    EXPECT_EQ(e.baseline_report->tokens_reasoning, 1000u);
    EXPECT_NEAR(*e.ratios.at("tokens_reasoning"), 5.0, 1e-9);
}

TEST(Experiment, FailureIsIsolated) {
    auto book = standard_book();
    auto broken = testing::cua_script(kObjectives);
    broken[1].text = "Anchoring output without a block";
    book.set("q2", InvocationRole::kCua, broken);
    Fixture f(book);
    const auto r = run_experiment(prompts(3), f.context);
    ASSERT_EQ(r.executions.size(), 3u);
    EXPECT_TRUE(r.executions[0].ok());
    EXPECT_FALSE(r.executions[1].ok());
    EXPECT_TRUE(r.executions[2].ok());
    const auto& failure = r.executions[1].failures.at(0);
    EXPECT_EQ(failure.paradigm, "CUA");
    EXPECT_EQ(failure.code, "MISSING_BLOCK");
    EXPECT_EQ(failure.checkpoint, 2u);
    EXPECT_FALSE(r.executions[1].cua_report.has_value());
    EXPECT_EQ(r.traces.size(), 4u);
    for (const auto& t : r.traces) EXPECT_NE(t.anchor.id(), "q2");
}

TEST(Experiment, BaselineFailureRecorded) {
    auto book = standard_book();
    book.set("q1", InvocationRole::kBaseline, {{"only one step", 1, 1}});
    Fixture f(book);
    const auto r = run_experiment(prompts(1), f.context);
    ASSERT_FALSE(r.executions[0].ok());
    EXPECT_EQ(r.executions[0].failures[0].paradigm, "Baseline");
    EXPECT_EQ(r.executions[0].failures[0].code, "SCRIPT_UNDERRUN");
    EXPECT_TRUE(r.traces.empty());
}

TEST(Experiment, OrderAndResultsIndependentOfConcurrency) {
    Fixture serial(standard_book(), 1);
    Fixture parallel(standard_book(), 8);
    const auto a = run_experiment(prompts(20), serial.context);
    const auto b = run_experiment(prompts(20), parallel.context);
    ASSERT_EQ(a.executions.size(), 20u);
    for (std::size_t i = 0; i < 20; ++i) {
        EXPECT_EQ(a.executions[i].prompt_id, "q" + std::to_string(i + 1));
        EXPECT_EQ(a.executions[i].cua_report, b.executions[i].cua_report);
        EXPECT_EQ(a.executions[i].baseline_report, b.executions[i].baseline_report);
    }
    ASSERT_EQ(a.traces.size(), b.traces.size());
    for (std::size_t i = 0; i < a.traces.size(); ++i) {
        EXPECT_EQ(serialize_trace(a.traces[i]), serialize_trace(b.traces[i]));
    }
}

TEST(Experiment, ModelExtractionUsesExtractionScript) {
    auto book = standard_book();
    std::vector<ScriptEntry> extraction;
    for (int i = 0; i < 5; ++i) extraction.push_back({"Extracted objective " + std::to_string(i), 20, 5});
    book.set(InvocationRole::kExtraction, extraction);
    Fixture f(book);
    f.context.baseline.extractor = ExtractorMode::kModel;
    const auto r = run_experiment(prompts(1), f.context);
    ASSERT_TRUE(r.executions[0].ok());
    EXPECT_EQ(r.executions[0].baseline_report->tokens_measurement, 125u);
    EXPECT_EQ(r.executions[0].baseline_report->tokens_reasoning, 1000u);
}

TEST(Experiment, Preconditions) {
    Fixture f(standard_book());
    EXPECT_THROW((void)run_experiment({}, f.context), ConfigError);
    auto ctx = f.context;
    ctx.embedder = nullptr;
    EXPECT_THROW((void)run_experiment(prompts(1), ctx), ConfigError);
}

}  // namespace
}  // namespace govinf
