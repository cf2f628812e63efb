#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace govinf {

// Sentinel lines that fence the structured block of a staged model output.
inline constexpr std::string_view kBlockOpen = "===CUA-BLOCK===";
inline constexpr std::string_view kBlockClose = "===END-CUA-BLOCK===";

struct BlockSplit {
    std::string prose;                // output with the last block removed, trimmed
    std::optional<std::string> body;  // lines between the fences of the last block
};

/// Locates the last complete fenced block. Fence lines match after trimming
/// surrounding whitespace; an unterminated fence does not count as a block.
[[nodiscard]] BlockSplit split_last_block(std::string_view raw_output);

}  // namespace govinf
