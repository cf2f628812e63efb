#include "govinf/backend/scripted_provider.hpp"

#include <fstream>
#include <sstream>

#include "core/json_util.hpp"

namespace govinf {
namespace {

using detail::Json;

std::vector<ScriptEntry> read_entries(const Json& array, const std::string& where) {
    if (!array.is_array()) throw ConfigError("script " + where + " must be a JSON array");
    std::vector<ScriptEntry> out;
    out.reserve(array.size());
    for (std::size_t i = 0; i < array.size(); ++i) {
        const auto& e = array[i];
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!e.is_object()) throw ConfigError("script entry " + at + " must be an object");
        ScriptEntry entry;
        auto text = e.find("text");
        if (text == e.end() || !text->is_string()) {
            throw ConfigError("script entry " + at + " needs a string 'text'");
        }
        entry.text = text->get<std::string>();
        for (auto [key, slot] : {std::pair{"prompt_tokens", &entry.prompt_tokens},
                                 std::pair{"completion_tokens", &entry.completion_tokens}}) {
            auto it = e.find(key);
            if (it == e.end()) continue;
            if (!it->is_number_unsigned()) {
                throw ConfigError("script entry " + at + ": '" + key + "' must be a non-negative integer");
            }
            *slot = it->get<std::uint64_t>();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::optional<InvocationRole> role_from_key(std::string_view key) {
    if (key == "cua") return InvocationRole::kCua;
    if (key == "baseline") return InvocationRole::kBaseline;
    if (key == "extraction") return InvocationRole::kExtraction;
    return std::nullopt;
}

Json entries_to_json(const std::vector<ScriptEntry>& entries) {
    Json out = Json::array();
    for (const auto& e : entries) {
        out.push_back(Json{{"text", e.text},
                           {"prompt_tokens", e.prompt_tokens},
                           {"completion_tokens", e.completion_tokens}});
    }
    return out;
}

}  // namespace

ScriptedProvider::ScriptedProvider(std::vector<ScriptEntry> script) : script_(std::move(script)) {}

ModelResponse ScriptedProvider::do_invoke(const ModelRequest& request) {
    std::lock_guard lock(mutex_);
    prompts_.push_back(request.prompt);
    if (next_ >= script_.size()) throw ScriptUnderrunError(next_);
    const auto& entry = script_[next_++];
    return ModelResponse{entry.text, entry.prompt_tokens, entry.completion_tokens};
}

std::size_t ScriptedProvider::calls() const {
    std::lock_guard lock(mutex_);
    return prompts_.size();
}

std::size_t ScriptedProvider::remaining() const {
    std::lock_guard lock(mutex_);
    return script_.size() - next_;
}

std::vector<std::string> ScriptedProvider::prompts() const {
    std::lock_guard lock(mutex_);
    return prompts_;
}

std::vector<ScriptEntry> parse_script(std::string_view json) {
    Json doc;
    try {
        doc = Json::parse(json.begin(), json.end());
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("script is not valid JSON: ") + e.what());
    }
    return read_entries(doc, "");
}

ScriptBook ScriptBook::uniform(std::vector<ScriptEntry> script) {
    ScriptBook book;
    book.global_.fallback = std::move(script);
    return book;
}

ScriptBook ScriptBook::parse(std::string_view json) {
    Json doc;
    try {
        doc = Json::parse(json.begin(), json.end());
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("script is not valid JSON: ") + e.what());
    }
    if (doc.is_array()) return uniform(read_entries(doc, ""));
    if (!doc.is_object()) throw ConfigError("script must be a JSON array or object");

    auto read_scripts = [](const Json& obj, const std::string& where, bool allow_prompts) {
        Scripts s;
        for (const auto& item : obj.items()) {
            const std::string at = where + "." + item.key();
            if (item.key() == "default") {
                s.fallback = read_entries(item.value(), at);
            } else if (auto role = role_from_key(item.key())) {
                s.by_role[*role] = read_entries(item.value(), at);
            } else if (!(allow_prompts && item.key() == "prompts")) {
                throw ConfigError("unknown script key " + at);
            }
        }
        return s;
    };

    ScriptBook book;
    book.global_ = read_scripts(doc, "", true);
    if (auto it = doc.find("prompts"); it != doc.end()) {
        if (!it->is_object()) throw ConfigError("script key 'prompts' must be an object");
        for (const auto& item : it->items()) {
            if (!item.value().is_object()) {
                throw ConfigError("script prompts." + item.key() + " must be an object");
            }
            book.per_prompt_[item.key()] = read_scripts(item.value(), ".prompts." + item.key(), false);
        }
    }
    return book;
}

ScriptBook ScriptBook::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read script file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void ScriptBook::set(InvocationRole role, std::vector<ScriptEntry> script) {
    global_.by_role[role] = std::move(script);
}

void ScriptBook::set(std::string_view prompt_id, InvocationRole role,
                     std::vector<ScriptEntry> script) {
    per_prompt_[std::string(prompt_id)].by_role[role] = std::move(script);
}

const std::vector<ScriptEntry>* ScriptBook::find(const Scripts& s, InvocationRole role) {
    if (auto it = s.by_role.find(role); it != s.by_role.end()) return &it->second;
    if (s.fallback) return &*s.fallback;
    return nullptr;
}

const std::vector<ScriptEntry>& ScriptBook::script_for(std::string_view prompt_id,
                                                       InvocationRole role) const {
    static const std::vector<ScriptEntry> kEmpty;
    if (auto it = per_prompt_.find(prompt_id); it != per_prompt_.end()) {
        if (const auto* s = find(it->second, role)) return *s;
    }
    if (const auto* s = find(global_, role)) return *s;
    return kEmpty;
}

std::string ScriptBook::canonical_json() const {
    auto scripts_json = [](const Scripts& s) {
        Json j = Json::object();
        if (s.fallback) j["default"] = entries_to_json(*s.fallback);
        for (const auto& [role, entries] : s.by_role) {
            j[std::string(to_string(role))] = entries_to_json(entries);
        }
        return j;
    };
    Json doc = scripts_json(global_);
    if (!per_prompt_.empty()) {
        Json prompts = Json::object();
        for (const auto& [id, s] : per_prompt_) prompts[id] = scripts_json(s);
        doc["prompts"] = std::move(prompts);
    }
    return detail::canonical_dump(doc);
}

std::shared_ptr<ModelProvider> ScriptedProviderSource::provider_for(std::string_view prompt_id,
                                                                    InvocationRole role) const {
    return std::make_shared<ScriptedProvider>(book_.script_for(prompt_id, role));
}

std::string ScriptedProviderSource::digest_material() const {
    return "scripted:" + book_.canonical_json();
}

}  // namespace govinf
