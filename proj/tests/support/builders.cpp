#include "builders.hpp"

#include <fstream>
#include <sstream>
#include <unistd.h>

#include "govinf/core/block.hpp"
#include "govinf/core/validate.hpp"
#include "govinf/workflow/cua_workflow.hpp"

namespace govinf::testing {
namespace {

constexpr std::array<std::string_view, 24> kVocabulary{
    "soil",     "water",   "compost", "rain",     "corn",        "biodiversity",
    "policy",   "farmers", "carbon",  "pest",     "pollinator",  "yield",
    "evalúa",   "prácticas", "agroecológicas", "Σύνθεση", "почва", "Über",
    "tillage",  "cover",   "crops",   "markets",  "hedgerow",    "drought"};

std::optional<std::string> maybe(Rng& rng, double p) {
    if (!rng.coin(p)) return std::nullopt;
    return rng.sentence(1, 6);
}

}  // namespace

std::string Rng::word() { return std::string(pick(kVocabulary)); }

std::string Rng::sentence(std::size_t lo, std::size_t hi) {
    const std::size_t n = lo + below(hi - lo + 1);
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out += coin(0.1) ? ", " : " ";
        out += word();
    }
    return out;
}

std::string staged_output(std::string_view prose, const Json& block) {
    std::string out(prose);
    out += "\n\n";
    out += kBlockOpen;
    out += "\n" + block.dump() + "\n";
    out += kBlockClose;
    return out;
}

Json instrument_json(const InstrumentDeclaration& d) {
    auto opt = [](const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); };
    return Json{{"class", std::string(to_string(d.uci_class))},
                {"name", d.name},
                {"purpose", opt(d.purpose)},
                {"scope", opt(d.scope)},
                {"limitations", opt(d.limitations)},
                {"institutional_embedding", opt(d.institutional_embedding)}};
}

InstrumentDeclaration declaration(UciClass cls, std::string name, std::size_t source_checkpoint,
                                  int attributes) {
    InstrumentDeclaration d;
    d.uci_class = cls;
    d.name = std::move(name);
    d.source_checkpoint = source_checkpoint;
    if (attributes > 0) d.purpose = "purpose";
    if (attributes > 1) d.scope = "scope";
    if (attributes > 2) d.limitations = "limitations";
    if (attributes > 3) d.institutional_embedding = "institutional embedding";
    return d;
}

namespace {

std::array<std::string, kCheckpointsPerRun> staged_outputs(
    const Objectives& objectives, const std::vector<InstrumentDeclaration>& declarations,
    std::string_view synthesis_prose) {
    std::array<std::string, kCheckpointsPerRun> out;
    for (std::size_t i = 0; i < kCheckpointsPerRun; ++i) {
        Json block{{"objective", objectives[i]}};
        const std::size_t index = i + 1;
        if (index == 2 || index == 3) {
            Json list = Json::array();
            for (const auto& d : declarations) {
                if (d.source_checkpoint == index) list.push_back(instrument_json(d));
            }
            block["instruments"] = list;
        }
        const std::string prose = index == kCuaConvergenceIndex
                                      ? std::string(synthesis_prose)
                                      : "Stage " + std::to_string(index) + " prose.";
        out[i] = staged_output(prose, block);
    }
    return out;
}

}  // namespace

std::vector<ScriptEntry> cua_script(const Objectives& objectives,
                                    const std::vector<InstrumentDeclaration>& declarations,
                                    std::uint64_t prompt_tokens, std::uint64_t completion_tokens,
                                    std::string_view synthesis_prose) {
    std::vector<ScriptEntry> script;
    for (auto& text : staged_outputs(objectives, declarations, synthesis_prose)) {
        script.push_back({std::move(text), prompt_tokens, completion_tokens});
    }
    return script;
}

std::vector<ScriptEntry> baseline_script(const std::array<std::string, kCheckpointsPerRun>& outputs,
                                         std::uint64_t prompt_tokens,
                                         std::uint64_t completion_tokens) {
    std::vector<ScriptEntry> script;
    for (const auto& text : outputs) script.push_back({text, prompt_tokens, completion_tokens});
    return script;
}

InferenceTrace cua_trace(const EpistemicAnchor& anchor, const Objectives& objectives,
                         std::string_view synthesis_prose,
                         std::vector<InstrumentDeclaration> declarations) {
    InferenceTrace t;
    t.paradigm = Paradigm::kCua;
    t.anchor = anchor;
    const auto outputs = staged_outputs(objectives, declarations, synthesis_prose);
    for (std::size_t i = 0; i < kCheckpointsPerRun; ++i) {
        Checkpoint cp;
        cp.index = i + 1;
        cp.stage = kCuaStageOrder[i];
        cp.objective = objectives[i];
        cp.raw_output = outputs[i];
        cp.prompt_tokens = 100;
        cp.completion_tokens = 50;
        t.checkpoints.push_back(std::move(cp));
    }
    t.declarations = std::move(declarations);
    t.convergence_index = kCuaConvergenceIndex;
    t.synthesis_text = expected_synthesis_text(t);
    t.technical_synthesis = build_technical_synthesis(t);
    t.run_config_digest = "test";
    return t;
}

InferenceTrace baseline_trace(const EpistemicAnchor& anchor, const Objectives& objectives,
                              const std::array<std::string, kCheckpointsPerRun>& outputs) {
    InferenceTrace t;
    t.paradigm = Paradigm::kBaseline;
    t.anchor = anchor;
    for (std::size_t i = 0; i < kCheckpointsPerRun; ++i) {
        Checkpoint cp;
        cp.index = i + 1;
        cp.stage = StageKind::kBaselineStep;
        cp.objective = objectives[i];
        cp.raw_output = outputs[i];
        cp.prompt_tokens = 100;
        cp.completion_tokens = 50;
        t.checkpoints.push_back(std::move(cp));
    }
    t.convergence_index = kBaselineConvergenceIndex;
    t.synthesis_text = expected_synthesis_text(t);
    t.run_config_digest = "test";
    return t;
}

std::vector<InstrumentDeclaration> random_declarations(Rng& rng, std::size_t max_count) {
    std::vector<InstrumentDeclaration> out(rng.below(max_count + 1));
    for (auto& d : out) {
        d.uci_class = rng.pick(kAllUciClasses);
        d.name = rng.sentence(1, 3);
        d.purpose = maybe(rng, 0.6);
        d.scope = maybe(rng, 0.5);
        d.limitations = maybe(rng, 0.4);
        d.institutional_embedding = maybe(rng, 0.3);
        if (rng.coin(0.05)) d.scope = "";  // present but empty counts as missing
        d.source_checkpoint = rng.coin() ? 2 : 3;
    }
    return out;
}

namespace {

EpistemicAnchor random_anchor(Rng& rng) {
    return EpistemicAnchor("g" + std::to_string(rng.between(0, 1'000'000)), rng.sentence(1, 12));
}

Objectives random_objectives(Rng& rng, const EpistemicAnchor& anchor) {
    Objectives o;
    for (auto& s : o) s = rng.coin(0.1) ? anchor.text() : rng.sentence(1, 10);
    return o;
}

void randomize_tokens(Rng& rng, InferenceTrace& t) {
    for (auto& cp : t.checkpoints) {
        cp.prompt_tokens = rng.between(0, 5000);
        cp.completion_tokens = rng.between(0, 2000);
        if (t.paradigm == Paradigm::kBaseline && rng.coin(0.3)) cp.measurement_tokens = rng.between(1, 300);
    }
}

}  // namespace

InferenceTrace random_cua_trace(Rng& rng) {
    const auto anchor = random_anchor(rng);
    auto prose = rng.coin(0.1) ? anchor.text() : rng.sentence(1, 20);
    auto t = cua_trace(anchor, random_objectives(rng, anchor), prose, random_declarations(rng));
    randomize_tokens(rng, t);
    t.run_config_digest = rng.coin() ? "" : "digest-" + rng.word();
    return t;
}

InferenceTrace random_baseline_trace(Rng& rng) {
    const auto anchor = random_anchor(rng);
    std::array<std::string, kCheckpointsPerRun> outputs;
    for (auto& s : outputs) s = rng.coin(0.05) ? std::string() : rng.sentence(0, 25);
    if (outputs[4].empty()) outputs[4] = rng.sentence(1, 5);  // EAS needs a synthesis
    auto t = baseline_trace(anchor, random_objectives(rng, anchor), outputs);
    randomize_tokens(rng, t);
    return t;
}

InferenceTrace random_trace(Rng& rng) {
    return rng.coin() ? random_cua_trace(rng) : random_baseline_trace(rng);
}

std::filesystem::path temp_dir(std::string_view name) {
    static int counter = 0;
    auto dir = std::filesystem::temp_directory_path() /
               ("govinf-" + std::string(name) + "-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter++));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace govinf::testing
