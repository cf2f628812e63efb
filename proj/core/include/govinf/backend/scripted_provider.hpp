#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "govinf/backend/provider.hpp"

namespace govinf {

struct ScriptEntry {
    std::string text;
    std::uint64_t prompt_tokens = 0;
    std::uint64_t completion_tokens = 0;

    bool operator==(const ScriptEntry&) const = default;
};

/// Replays a fixed list of responses in order and reports exactly the
/// scripted token counts. Calls are serialized so the script order holds
/// under concurrent use.
class ScriptedProvider : public ModelProvider {
public:
    explicit ScriptedProvider(std::vector<ScriptEntry> script);

    [[nodiscard]] std::string describe() const override { return "scripted"; }

    [[nodiscard]] std::size_t calls() const;
    [[nodiscard]] std::size_t remaining() const;
    /// Prompts received so far, in call order.
    [[nodiscard]] std::vector<std::string> prompts() const;

private:
    ModelResponse do_invoke(const ModelRequest& request) override;

    mutable std::mutex mutex_;
    std::vector<ScriptEntry> script_;
    std::size_t next_ = 0;
    std::vector<std::string> prompts_;
};

/// Parses a JSON array of {text, prompt_tokens, completion_tokens}.
/// Throws ConfigError on malformed input.
[[nodiscard]] std::vector<ScriptEntry> parse_script(std::string_view json);

/// A script file. Either a bare JSON array (the same script for every run and
/// role), or an object with optional keys "default", "cua", "baseline",
/// "extraction" (each an array) and "prompts" (prompt id -> object with the
/// same role keys). Lookup for (prompt, role) tries prompts[id][role],
/// prompts[id].default, [role], default.
class ScriptBook {
public:
    [[nodiscard]] static ScriptBook parse(std::string_view json);
    [[nodiscard]] static ScriptBook load(const std::filesystem::path& path);

    [[nodiscard]] static ScriptBook uniform(std::vector<ScriptEntry> script);

    void set(InvocationRole role, std::vector<ScriptEntry> script);
    void set(std::string_view prompt_id, InvocationRole role, std::vector<ScriptEntry> script);

    /// Empty when nothing matches; the provider then underruns on first use.
    [[nodiscard]] const std::vector<ScriptEntry>& script_for(std::string_view prompt_id,
                                                             InvocationRole role) const;

    /// Canonical JSON of the whole book, for run digests.
    [[nodiscard]] std::string canonical_json() const;

private:
    struct Scripts {
        std::optional<std::vector<ScriptEntry>> fallback;
        std::map<InvocationRole, std::vector<ScriptEntry>> by_role;
    };

    static const std::vector<ScriptEntry>* find(const Scripts& s, InvocationRole role);

    Scripts global_;
    std::map<std::string, Scripts, std::less<>> per_prompt_;
};

/// Fresh ScriptedProvider per (prompt, role) request.
class ScriptedProviderSource : public ProviderSource {
public:
    explicit ScriptedProviderSource(ScriptBook book) : book_(std::move(book)) {}

    [[nodiscard]] std::shared_ptr<ModelProvider> provider_for(std::string_view prompt_id,
                                                              InvocationRole role) const override;
    [[nodiscard]] std::string digest_material() const override;

private:
    ScriptBook book_;
};

}  // namespace govinf
