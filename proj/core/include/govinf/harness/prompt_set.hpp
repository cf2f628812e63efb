#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace govinf {

struct Prompt {
    std::string id;
    std::string text;

    bool operator==(const Prompt&) const = default;
};

/// Either a JSON array of {id, text} (detected by a leading '['), or UTF-8
/// text with one prompt per line; blank lines and lines starting with '#'
/// are skipped and prompts get ids p001, p002, ... in file order.
/// Throws ConfigError for invalid UTF-8, duplicate ids or blank prompts.
[[nodiscard]] std::vector<Prompt> parse_prompt_set(std::string_view contents);
[[nodiscard]] std::vector<Prompt> load_prompt_set(const std::filesystem::path& path);

}  // namespace govinf
