#include <gtest/gtest.h>

#include "govinf/harness/config.hpp"
#include "builders.hpp"

namespace govinf {
namespace {

TEST(Config, DefaultsWhenEmpty) {
    const auto c = parse_config("{}");
    EXPECT_EQ(c.backend.kind, BackendKind::kNone);
    EXPECT_EQ(c.sampling, SamplingParams{});
    EXPECT_EQ(c.sampling.seed, 42);
    EXPECT_EQ(c.baseline.extractor, ExtractorMode::kHeuristic);
    EXPECT_EQ(c.embedder.kind, "reference");
    EXPECT_EQ(c.max_in_flight, 4u);
}

TEST(Config, FullDocument) {
    const auto c = parse_config(R"({
        "backend": {"kind": "http", "url": "http://h/v1", "model": "m", "api_key_env": "K",
                    "timeout_ms": 1000, "max_attempts": 5, "backoff_ms": 10},
        "sampling": {"temperature": 0.7, "top_p": 0.9, "max_tokens": 64, "seed": null},
        "baseline": {"extractor": "model", "continuation_instruction": "go on"},
        "harness": {"max_in_flight": 2}})");
    EXPECT_EQ(c.backend.kind, BackendKind::kHttp);
    EXPECT_EQ(c.backend.retry.max_attempts, 5);
    EXPECT_EQ(c.backend.timeout.count(), 1000);
    EXPECT_EQ(c.sampling.temperature, 0.7);
    EXPECT_FALSE(c.sampling.seed.has_value());
    EXPECT_EQ(c.baseline.extractor, ExtractorMode::kModel);
    EXPECT_EQ(c.baseline.continuation_instruction, "go on");
    EXPECT_EQ(c.baseline.sampling, c.sampling);
    EXPECT_EQ(c.max_in_flight, 2u);
}

TEST(Config, Rejections) {
    EXPECT_THROW((void)parse_config(R"({"bogus": 1})"), ConfigError);
    EXPECT_THROW((void)parse_config(R"({"backend": {"kind": "grpc"}})"), ConfigError);
    EXPECT_THROW((void)parse_config(R"({"sampling": {"top_p": 0}})"), ConfigError);
    EXPECT_THROW((void)parse_config(R"({"sampling": {"max_tokens": 1.5}})"), ConfigError);
    EXPECT_THROW((void)parse_config(R"({"harness": {"max_in_flight": 0}})"), ConfigError);
    EXPECT_THROW((void)parse_config(R"({"embedder": {"kind": "magic"}})"), ConfigError);
    EXPECT_THROW((void)parse_config("not json"), ConfigError);
}

TEST(Config, RelativePathsResolveAgainstConfigDirectory) {
    const auto c = load_config(std::string(GOVINF_DATA_DIR) + "/config/example_scripted.json");
    EXPECT_EQ(c.backend.kind, BackendKind::kScripted);
    EXPECT_TRUE(std::filesystem::exists(c.backend.script)) << c.backend.script;
    EXPECT_TRUE(c.templates == StageTemplates::defaults());
    EXPECT_NO_THROW((void)make_provider_source(c.backend));
}

TEST(Config, DigestCoversOutputAffectingSettings) {
    const RunConfig base;
    const auto d0 = run_config_digest(base, "scripted:x", "reference:fnv1a64-bow:d256");
    EXPECT_EQ(d0.size(), 64u);
    EXPECT_EQ(d0, run_config_digest(base, "scripted:x", "reference:fnv1a64-bow:d256"));
    EXPECT_NE(d0, run_config_digest(base, "scripted:y", "reference:fnv1a64-bow:d256"));
    EXPECT_NE(d0, run_config_digest(base, "scripted:x", "other"));

    auto c = base;
    c.sampling.temperature = 0.1;
    EXPECT_NE(d0, run_config_digest(c, "scripted:x", "reference:fnv1a64-bow:d256"));
    c = base;
    c.baseline.extractor = ExtractorMode::kModel;
    EXPECT_NE(d0, run_config_digest(c, "scripted:x", "reference:fnv1a64-bow:d256"));
    c = base;
    c.baseline.continuation_instruction = "keep going";
    EXPECT_NE(d0, run_config_digest(c, "scripted:x", "reference:fnv1a64-bow:d256"));
    c = base;
    c.max_in_flight = 1;  // concurrency never changes outputs
    EXPECT_EQ(d0, run_config_digest(c, "scripted:x", "reference:fnv1a64-bow:d256"));
}

TEST(Config, ProviderAndEmbedderFactories) {
    BackendConfig none;
    EXPECT_THROW((void)make_provider_source(none), ConfigError);
    BackendConfig scripted;
    scripted.kind = BackendKind::kScripted;
    EXPECT_THROW((void)make_provider_source(scripted), ConfigError);
    BackendConfig http;
    http.kind = BackendKind::kHttp;
    http.url = "http://127.0.0.1:9/v1/chat/completions";
    http.model = "m";
    http.api_key_env = "GOVINF_TEST_SURELY_UNSET_VARIABLE";
    EXPECT_THROW((void)make_provider_source(http), ConfigError);
    http.api_key_env.clear();
    EXPECT_NE(make_provider_source(http)->digest_material().find("127.0.0.1"), std::string::npos);

    EXPECT_EQ(make_embedder(EmbedderConfig{})->id(), "reference:fnv1a64-bow:d256");
    EmbedderConfig remote;
    remote.kind = "remote";
    EXPECT_THROW((void)make_embedder(remote), ConfigError);
}

}  // namespace
}  // namespace govinf
