#include <gtest/gtest.h>

#include "govinf/core/validate.hpp"
#include "govinf/workflow/baseline_workflow.hpp"
#include "builders.hpp"

namespace govinf {
namespace {

const EpistemicAnchor kAnchor("p1", "How do cover crops affect soil health?");
const std::array<std::string, 5> kOutputs{"Cover crops add organic matter. More text.",
                                          "They protect the surface! Also roots.",
                                          "Is tillage relevant? Probably.",
                                          "Line one\n\nLine two.", "Overall they help soils."};

TEST(RunBaseline, FiveChainedCallsThenHeuristicObjectives) {
    ScriptedProvider provider(testing::baseline_script(kOutputs, 200, 100));
    const auto t = run_baseline(kAnchor, provider, BaselineConfig{});
    EXPECT_EQ(provider.calls(), 5u);
    ASSERT_EQ(t.checkpoints.size(), 5u);
    EXPECT_EQ(t.checkpoints[0].objective, "Cover crops add organic matter.");
    EXPECT_EQ(t.checkpoints[1].objective, "They protect the surface!");
    EXPECT_EQ(t.checkpoints[2].objective, "Is tillage relevant?");
    EXPECT_EQ(t.checkpoints[3].objective, "Line one");
    EXPECT_EQ(t.checkpoints[4].objective, "Overall they help soils.");
    for (const auto& cp : t.checkpoints) {
        EXPECT_EQ(cp.stage, StageKind::kBaselineStep);
        EXPECT_EQ(cp.measurement_tokens, 0u);
    }
    EXPECT_EQ(t.convergence_index, 5u);
    EXPECT_EQ(t.synthesis_text, kOutputs[4]);
    EXPECT_TRUE(t.declarations.empty());
    EXPECT_FALSE(t.technical_synthesis.has_value());
    EXPECT_TRUE(validate_trace(t).ok());
}

TEST(RunBaseline, PromptsChainPriorOutputs) {
    ScriptedProvider provider(testing::baseline_script(kOutputs));
    (void)run_baseline(kAnchor, provider, BaselineConfig{});
    const auto prompts = provider.prompts();
    EXPECT_EQ(prompts[0], kAnchor.text());
    std::string expected = kAnchor.text();
    for (std::size_t i = 1; i < 5; ++i) {
        expected += "\n\n" + kOutputs[i - 1];
        EXPECT_EQ(prompts[i], expected + "\n\n" + std::string(default_continuation_instruction()));
    }
}

TEST(RunBaseline, ModelExtractionBooksMeasurementTokens) {
    ScriptedProvider provider(testing::baseline_script(kOutputs, 200, 100));
    ScriptedProvider extractor({{"Objective one", 30, 5}, {"  ", 30, 5}, {"Objective three", 30, 5},
                                {"Objective four", 30, 5}, {"Objective five", 30, 5}});
    BaselineConfig config;
    config.extractor = ExtractorMode::kModel;
    const auto t = run_baseline(kAnchor, provider, config, &extractor);
    EXPECT_EQ(extractor.calls(), 5u);
    EXPECT_EQ(t.checkpoints[0].objective, "Objective one");
    EXPECT_EQ(t.checkpoints[1].objective, "They protect the surface!");  // blank answer falls back
    for (const auto& cp : t.checkpoints) {
        EXPECT_EQ(cp.measurement_tokens, 35u);
        EXPECT_EQ(cp.prompt_tokens, 200u);
    }
    const auto prompts = extractor.prompts();
    EXPECT_NE(prompts[2].find(kOutputs[2]), std::string::npos);
    EXPECT_NE(prompts[2].find(kAnchor.text()), std::string::npos);
}

TEST(RunBaseline, ExtractionFailureAborts) {
    ScriptedProvider provider(testing::baseline_script(kOutputs));
    ScriptedProvider extractor({{"one", 1, 1}});
    BaselineConfig config;
    config.extractor = ExtractorMode::kModel;
    try {
        (void)run_baseline(kAnchor, provider, config, &extractor);
        FAIL();
    } catch (const AbortedRunError& e) {
        EXPECT_EQ(e.cause(), AbortedRunError::Cause::kExtraction);
        EXPECT_EQ(e.checkpoint(), 2u);
    }
}

TEST(RunBaseline, ProviderFailureAborts) {
    ScriptedProvider provider({{"only one", 1, 1}});
    try {
        (void)run_baseline(kAnchor, provider, BaselineConfig{});
        FAIL();
    } catch (const AbortedRunError& e) {
        EXPECT_EQ(e.cause(), AbortedRunError::Cause::kProvider);
        EXPECT_EQ(e.checkpoint(), 2u);
        EXPECT_EQ(e.partial().size(), 1u);
    }
}

TEST(HeuristicObjective, Rules) {
    EXPECT_EQ(heuristic_objective("", "anchor"), "anchor");
    EXPECT_EQ(heuristic_objective("  \n ", "anchor"), "anchor");
    EXPECT_EQ(heuristic_objective("No terminator", "a"), "No terminator");
    EXPECT_EQ(heuristic_objective("Version 2.5 is out. Next.", "a"), "Version 2.5 is out.");
    EXPECT_EQ(heuristic_objective("Title\n  \nBody.", "a"), "Title");
    const std::string long_text(300, 'x');
    EXPECT_EQ(heuristic_objective(long_text, "a").size(), 240u);
    std::string accented;
    for (int i = 0; i < 250; ++i) accented += "é";
    EXPECT_EQ(heuristic_objective(accented, "a").size(), 480u);
}

TEST(ExtractPosthoc, RequiresBaselineTrace) {
    const auto cua = testing::cua_trace(kAnchor, {"a", "b", "c", "d", "e"}, "S.");
    EXPECT_THROW((void)extract_posthoc_objectives(cua, BaselineConfig{}, nullptr), ContractError);
}

TEST(ExtractorMode, Names) {
    EXPECT_EQ(extractor_from_string("heuristic"), ExtractorMode::kHeuristic);
    EXPECT_EQ(extractor_from_string("model"), ExtractorMode::kModel);
    EXPECT_EQ(extractor_from_string("llm"), std::nullopt);
    EXPECT_EQ(to_string(ExtractorMode::kModel), "model");
}

}  // namespace
}  // namespace govinf
