#include "govinf/harness/prompt_set.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "core/json_util.hpp"
#include "govinf/core/errors.hpp"
#include "govinf/core/text.hpp"

namespace govinf {
namespace {

using detail::Json;

std::string ordinal_id(std::size_t n) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "p%03zu", n);
    return buf;
}

std::vector<Prompt> parse_json_set(std::string_view contents) {
    Json doc;
    try {
        doc = Json::parse(contents.begin(), contents.end());
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("prompt set is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw ConfigError("JSON prompt set must be an array");
    std::vector<Prompt> prompts;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& e = doc[i];
        const std::string at = "prompt set entry " + std::to_string(i);
        if (!e.is_object() || !e.contains("id") || !e.contains("text") || !e["id"].is_string() ||
            !e["text"].is_string()) {
            throw ConfigError(at + " must be an object with string id and text");
        }
        prompts.push_back({e["id"].get<std::string>(), e["text"].get<std::string>()});
    }
    return prompts;
}

std::vector<Prompt> parse_line_set(std::string_view contents) {
    std::vector<Prompt> prompts;
    std::size_t pos = 0;
    while (pos <= contents.size()) {
        auto nl = contents.find('\n', pos);
        if (nl == std::string_view::npos) nl = contents.size();
        const auto line = text::trim(contents.substr(pos, nl - pos));
        pos = nl + 1;
        if (line.empty() || line.front() == '#') continue;
        prompts.push_back({ordinal_id(prompts.size() + 1), std::string(line)});
    }
    return prompts;
}

}  // namespace

std::vector<Prompt> parse_prompt_set(std::string_view contents) {
    if (!text::is_valid_utf8(contents)) throw ConfigError("prompt set is not valid UTF-8");
    const auto body = text::trim(contents);
    auto prompts = !body.empty() && body.front() == '[' ? parse_json_set(body) : parse_line_set(contents);

    std::set<std::string> seen;
    for (const auto& p : prompts) {
        if (text::trim(p.id).empty()) throw ConfigError("prompt id is blank");
        if (p.id.find('/') != std::string::npos) throw ConfigError("prompt id contains '/': " + p.id);
        if (text::trim(p.text).empty()) throw ConfigError("prompt " + p.id + " is blank");
        if (!seen.insert(p.id).second) throw ConfigError("duplicate prompt id " + p.id);
    }
    return prompts;
}

std::vector<Prompt> load_prompt_set(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read prompt set " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_prompt_set(ss.str());
}

}  // namespace govinf
