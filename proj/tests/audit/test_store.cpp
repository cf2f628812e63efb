#include <gtest/gtest.h>

#include <algorithm>
#include <thread>

#include "govinf/audit/store.hpp"
#include "govinf/core/serialize.hpp"
#include "builders.hpp"

namespace govinf {
namespace {

using testing::read_file;
using testing::write_file;

std::vector<InferenceTrace> three_traces() {
    testing::Rng rng(7);
    return {testing::random_cua_trace(rng), testing::random_baseline_trace(rng),
            testing::random_cua_trace(rng)};
}

TEST(Store, RoundTrip) {
    const auto path = testing::temp_dir("store") / "traces.jsonl";
    const auto traces = three_traces();
    store_traces(path, traces);
    EXPECT_EQ(load_traces(path), traces);
    const auto text = read_file(path);
    EXPECT_EQ(text.substr(0, text.find('\n')), kStoreHeader);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
}

TEST(Store, AppendPreservesPriorBytes) {
    const auto path = testing::temp_dir("append") / "traces.jsonl";
    const auto traces = three_traces();
    store_traces(path, std::span(traces).first(2));
    const auto before = read_file(path);
    TraceStore store(path);
    store.append(traces[2]);
    const auto after = read_file(path);
    EXPECT_EQ(after.substr(0, before.size()), before);
    EXPECT_EQ(after.substr(before.size()), serialize_trace(traces[2]) + "\n");
    EXPECT_EQ(load_traces(path).size(), 3u);
}

TEST(Store, TruncatedLineReportsLineNumber) {
    const auto path = testing::temp_dir("truncated") / "traces.jsonl";
    const auto traces = three_traces();
    const auto a = serialize_trace(traces[0]);
    const auto b = serialize_trace(traces[1]);
    write_file(path, std::string(kStoreHeader) + "\n" + a.substr(0, a.size() / 2) + "\n" + b + "\n");
    try {
        (void)load_traces(path);
        FAIL();
    } catch (const StoreError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    const auto lines = scan_store(path);
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_FALSE(lines[0].trace.has_value());
    EXPECT_TRUE(lines[1].trace.has_value());
    EXPECT_TRUE(lines[1].validation.ok());
}

TEST(Store, InvalidTraceLineRejected) {
    const auto path = testing::temp_dir("invalid") / "traces.jsonl";
    auto doc = testing::Json::parse(serialize_trace(three_traces()[0]));
    doc["convergence_index"] = 5;
    write_file(path, std::string(kStoreHeader) + "\n" + doc.dump() + "\n");
    try {
        (void)load_traces(path);
        FAIL();
    } catch (const StoreError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_NE(std::string(e.what()).find("CONVERGENCE_INDEX"), std::string::npos);
    }
    EXPECT_TRUE(scan_store(path)[0].validation.has("CONVERGENCE_INDEX"));
}

TEST(Store, HeaderChecks) {
    const auto dir = testing::temp_dir("header");
    write_file(dir / "v2.jsonl", "{\"schema_version\":2}\n");
    EXPECT_THROW((void)load_traces(dir / "v2.jsonl"), VersionError);
    EXPECT_THROW(TraceStore{dir / "v2.jsonl"}, VersionError);
    write_file(dir / "junk.jsonl", "hello\n");
    EXPECT_THROW((void)load_traces(dir / "junk.jsonl"), StoreError);
    write_file(dir / "empty.jsonl", "");
    EXPECT_THROW((void)load_traces(dir / "empty.jsonl"), StoreError);
    EXPECT_THROW((void)load_traces(dir / "absent.jsonl"), IoError);
}

TEST(Store, RefusesToAppendAfterPartialLine) {
    const auto path = testing::temp_dir("partial") / "traces.jsonl";
    write_file(path, std::string(kStoreHeader) + "\n{\"anch");
    EXPECT_THROW(TraceStore{path}, StoreError);
}

TEST(Store, CreatesHeaderForNewOrEmptyFile) {
    const auto dir = testing::temp_dir("new");
    TraceStore store(dir / "nested" / "t.jsonl");
    EXPECT_EQ(read_file(dir / "nested" / "t.jsonl"), std::string(kStoreHeader) + "\n");
    EXPECT_TRUE(load_traces(dir / "nested" / "t.jsonl").empty());
}

TEST(Store, AppendRejectsInvalidTrace) {
    const auto path = testing::temp_dir("reject") / "t.jsonl";
    auto t = three_traces()[0];
    t.checkpoints.pop_back();
    TraceStore store(path);
    EXPECT_THROW(store.append(t), ContractError);
    EXPECT_EQ(read_file(path), std::string(kStoreHeader) + "\n");
}

TEST(Store, ConcurrentAppendsKeepLinesIntact) {
    const auto path = testing::temp_dir("concurrent") / "t.jsonl";
    TraceStore store(path);
    testing::Rng rng(11);
    std::vector<InferenceTrace> traces;
    for (int i = 0; i < 40; ++i) traces.push_back(testing::random_trace(rng));
    {
        std::vector<std::jthread> threads;
        for (int k = 0; k < 4; ++k) {
            threads.emplace_back([&, k] {
                for (int i = k; i < 40; i += 4) store.append(traces[i]);
            });
        }
    }
    EXPECT_EQ(load_traces(path).size(), 40u);
}

}  // namespace
}  // namespace govinf
