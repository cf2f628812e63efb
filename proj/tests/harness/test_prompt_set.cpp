#include <gtest/gtest.h>

#include "govinf/core/errors.hpp"
#include "govinf/harness/prompt_set.hpp"

namespace govinf {
namespace {

TEST(PromptSet, LineFormat) {
    const auto p = parse_prompt_set("# comment\nFirst prompt\n\n  Second prompt  \n#x\nThird");
    ASSERT_EQ(p.size(), 3u);
    EXPECT_EQ(p[0], (Prompt{"p001", "First prompt"}));
    EXPECT_EQ(p[1], (Prompt{"p002", "Second prompt"}));
    EXPECT_EQ(p[2], (Prompt{"p003", "Third"}));
}

TEST(PromptSet, JsonFormat) {
    const auto p = parse_prompt_set(R"(  [{"id":"soil","text":"How?"},{"id":"water","text":"Why?"}])");
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[1], (Prompt{"water", "Why?"}));
}

TEST(PromptSet, Rejections) {
    EXPECT_THROW((void)parse_prompt_set("bad \xC3"), ConfigError);
    EXPECT_THROW((void)parse_prompt_set(R"([{"id":"a","text":"x"},{"id":"a","text":"y"}])"), ConfigError);
    EXPECT_THROW((void)parse_prompt_set(R"([{"id":"a/b","text":"x"}])"), ConfigError);
    EXPECT_THROW((void)parse_prompt_set(R"([{"id":"a","text":"  "}])"), ConfigError);
    EXPECT_THROW((void)parse_prompt_set(R"([{"id":"a"}])"), ConfigError);
    EXPECT_THROW((void)parse_prompt_set("[not json"), ConfigError);
}

TEST(PromptSet, ShippedStandInSet) {
    const auto p = load_prompt_set(std::string(GOVINF_DATA_DIR) + "/prompts/agroecology_standin.txt");
    EXPECT_EQ(p.size(), 20u);
    EXPECT_EQ(p.back().id, "p020");
}

TEST(PromptSet, MissingFile) {
    EXPECT_THROW((void)load_prompt_set("/nonexistent/prompts.txt"), ConfigError);
}

}  // namespace
}  // namespace govinf
