#include "govinf/core/block.hpp"

#include <vector>

#include "govinf/core/text.hpp"

namespace govinf {
namespace {

struct Line {
    std::size_t begin;  // offset of first byte
    std::size_t end;    // offset one past the terminating '\n' (or end of input)
    std::string_view content;
};

std::vector<Line> split_lines(std::string_view s) {
    std::vector<Line> lines;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto nl = s.find('\n', pos);
        const std::size_t stop = nl == std::string_view::npos ? s.size() : nl;
        const std::size_t next = nl == std::string_view::npos ? s.size() : nl + 1;
        lines.push_back({pos, next, s.substr(pos, stop - pos)});
        pos = next;
    }
    return lines;
}

}  // namespace

BlockSplit split_last_block(std::string_view raw) {
    const auto lines = split_lines(raw);
    std::optional<std::size_t> open;
    std::optional<std::pair<std::size_t, std::size_t>> last;  // (open line, close line)
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto content = text::trim(lines[i].content);
        if (content == kBlockOpen) {
            open = i;
        } else if (content == kBlockClose && open) {
            last = std::pair{*open, i};
            open.reset();
        }
    }

    BlockSplit split;
    if (!last) {
        split.prose = std::string(text::trim(raw));
        return split;
    }

    const auto [open_line, close_line] = *last;
    std::string body;
    for (std::size_t i = open_line + 1; i < close_line; ++i) {
        body.append(lines[i].content);
        body.push_back('\n');
    }
    split.body = std::move(body);

    std::string prose(raw.substr(0, lines[open_line].begin));
    prose.append(raw.substr(lines[close_line].end));
    split.prose = std::string(text::trim(prose));
    return split;
}

}  // namespace govinf
