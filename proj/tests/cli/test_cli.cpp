#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "cli.hpp"
#include "govinf/audit/store.hpp"
#include "govinf/harness/report_writer.hpp"
#include "builders.hpp"

namespace govinf {
namespace {

using testing::Json;
using testing::read_file;
using testing::write_file;

const std::string kData = GOVINF_DATA_DIR;
const std::string kScript = kData + "/scripts/example_script.json";
const std::string kConfig = kData + "/config/example_scripted.json";

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path prompts_file(const std::filesystem::path& dir) {
    write_file(dir / "set.txt", "# test set\nHow do cover crops affect soil?\nWhat limits agroforestry?\n");
    return dir / "set.txt";
}

TEST(Cli, CompareHappyPath) {
    const auto dir = testing::temp_dir("cli-compare");
    const auto out = dir / "out";
    const auto r = cli({"compare", "--prompts", prompts_file(dir).string(), "--backend", "scripted",
                        "--script", kScript, "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    for (auto name : {kStoreFile, kReportFile, kExecutionsCsv, kSummaryFile, kPlotDataFile}) {
        EXPECT_TRUE(std::filesystem::exists(out / name)) << name;
    }
    EXPECT_EQ(load_traces(out / kStoreFile).size(), 4u);
}

TEST(Cli, AuditExitCodes) {
    const auto dir = testing::temp_dir("cli-audit");
    const auto out = (dir / "out").string();
    ASSERT_EQ(cli({"compare", "--prompts", prompts_file(dir).string(), "--config", kConfig, "--out", out}).code, 0);
    EXPECT_EQ(cli({"audit", "--out", out}).code, 0);

    auto doc = Json::parse(read_file(dir / "out" / kReportFile));
    doc["executions"][0]["cua_report"]["eas"] = doc["executions"][0]["cua_report"]["eas"].get<double>() + 0.01;
    write_file(dir / "out" / kReportFile, doc.dump());
    const auto r = cli({"audit", "--out", out});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("p001/cua eas"), std::string::npos) << r.out;

    doc["embedder_id"] = "remote:x@http://h:d256";
    for (auto& e : doc["executions"]) {
        e["cua_report"]["embedder_id"] = doc["embedder_id"];
        e["baseline_report"]["embedder_id"] = doc["embedder_id"];
    }
    write_file(dir / "out" / kReportFile, doc.dump());
    const auto remote = cli({"audit", "--out", out});
    EXPECT_EQ(remote.code, 2);
    EXPECT_NE(remote.out.find("NOT_INDEPENDENTLY_AUDITABLE"), std::string::npos);
}

TEST(Cli, AuditMissingTraceExitsThree) {
    const auto dir = testing::temp_dir("cli-missing");
    const auto out = (dir / "out").string();
    ASSERT_EQ(cli({"compare", "--prompts", prompts_file(dir).string(), "--config", kConfig, "--out", out}).code, 0);
    auto store = read_file(dir / "out" / kStoreFile);
    store.erase(store.rfind('\n', store.size() - 2) + 1);
    write_file(dir / "out" / kStoreFile, store);
    const auto r = cli({"audit", "--out", out});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("MISSING_TRACE p002/baseline"), std::string::npos) << r.out;
}

TEST(Cli, RunWithoutBackendIsUsageError) {
    const auto r = cli({"run", "--paradigm", "cua", "Some prompt"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("backend"), std::string::npos);
    EXPECT_EQ(cli({"run", "--backend", "scripted", "x"}).code, 1);  // no script
    EXPECT_EQ(cli({"run", "--backend", "http", "x"}).code, 1);      // no url
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli({}).code, 1);
    EXPECT_EQ(cli({"frobnicate"}).code, 1);
    EXPECT_EQ(cli({"run", "--unknown-flag", "x"}).code, 1);
    EXPECT_EQ(cli({"run", "--paradigm", "neither", "--script", kScript, "x"}).code, 1);
    EXPECT_EQ(cli({"compare", "--out", "/tmp/x"}).code, 1);  // --prompts missing
    EXPECT_EQ(cli({"audit"}).code, 1);
    EXPECT_EQ(cli({"run", "--extractor", "oracle", "--script", kScript, "x"}).code, 1);
    EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, RunPrintsReports) {
    const auto r = cli({"run", "--script", kScript, "--paradigm", "both", "How do cover crops affect soil?"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string first;
    std::string second;
    std::getline(lines, first);
    std::getline(lines, second);
    EXPECT_EQ(Json::parse(first)["paradigm"], "CUA");
    EXPECT_EQ(Json::parse(first)["lwc"], 4);
    EXPECT_EQ(Json::parse(second)["paradigm"], "Baseline");
    EXPECT_EQ(Json::parse(second)["lwc"], 5);

    const auto cua_only = cli({"run", "--script", kScript, "--paradigm", "cua", "x y"});
    EXPECT_EQ(std::count(cua_only.out.begin(), cua_only.out.end(), '\n'), 1);
}

TEST(Cli, RunFailureIsRuntimeError) {
    const auto dir = testing::temp_dir("cli-underrun");
    write_file(dir / "short.json", R"([{"text":"no block here","prompt_tokens":1,"completion_tokens":1}])");
    const auto r = cli({"run", "--script", (dir / "short.json").string(), "--paradigm", "cua", "x"});
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, CompareWithNoSuccessfulPairFails) {
    const auto dir = testing::temp_dir("cli-nopairs");
    write_file(dir / "bad.json", R"([{"text":"no block","prompt_tokens":1,"completion_tokens":1}])");
    const auto r = cli({"compare", "--prompts", prompts_file(dir).string(), "--script",
                        (dir / "bad.json").string(), "--out", (dir / "out").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("MISSING_BLOCK"), std::string::npos) << r.err;
}

TEST(Cli, MetricsAndValidate) {
    const auto dir = testing::temp_dir("cli-metrics");
    const auto out = (dir / "out").string();
    ASSERT_EQ(cli({"compare", "--prompts", prompts_file(dir).string(), "--config", kConfig, "--out", out}).code, 0);

    const auto m = cli({"metrics", "--out", out});
    ASSERT_EQ(m.code, 0) << m.err;
    EXPECT_EQ(std::count(m.out.begin(), m.out.end(), '\n'), 4);
    const auto reports = Json::parse(read_file(dir / "out" / kReportFile));
    EXPECT_EQ(Json::parse(m.out.substr(0, m.out.find('\n'))), reports["executions"][0]["cua_report"]);

    const auto v = cli({"validate", "--out", out});
    EXPECT_EQ(v.code, 0);
    EXPECT_NE(v.out.find("4/4 traces valid"), std::string::npos);

    auto store = read_file(dir / "out" / kStoreFile);
    auto doc = Json::parse(store.substr(store.find('\n') + 1, store.find('\n', store.find('\n') + 1) - store.find('\n') - 1));
    doc["convergence_index"] = 5;
    write_file(dir / "out" / kStoreFile, store + doc.dump() + "\n");
    const auto bad = cli({"validate", "--store", kStoreFile.data(), "--out", out});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.out.find("CONVERGENCE_INDEX"), std::string::npos);
    EXPECT_EQ(cli({"metrics", "--out", out}).code, 2);
}

TEST(Cli, CompareTwiceIsByteIdentical) {
    const auto dir = testing::temp_dir("cli-determinism");
    const auto prompts = prompts_file(dir).string();
    ASSERT_EQ(cli({"compare", "--prompts", prompts, "--config", kConfig, "--out", (dir / "a").string()}).code, 0);
    ASSERT_EQ(cli({"compare", "--prompts", prompts, "--config", kConfig, "--out", (dir / "b").string()}).code, 0);
    for (auto name : {kStoreFile, kReportFile, kExecutionsCsv, kSummaryFile, kPlotDataFile}) {
        EXPECT_EQ(read_file(dir / "a" / name), read_file(dir / "b" / name)) << name;
    }
}

}  // namespace
}  // namespace govinf
