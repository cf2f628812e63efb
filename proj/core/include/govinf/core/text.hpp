#pragma once

#include <cstddef>
#include <string>
#include <string_view>

// Small text helpers shared by the workflow and harness modules.
namespace govinf::text {

[[nodiscard]] std::string_view trim(std::string_view s) noexcept;

/// Truncates to at most `max_codepoints` UTF-8 code points without splitting
/// a multi-byte sequence.
[[nodiscard]] std::string truncate_codepoints(std::string_view s, std::size_t max_codepoints);

[[nodiscard]] bool is_valid_utf8(std::string_view s) noexcept;

}  // namespace govinf::text
