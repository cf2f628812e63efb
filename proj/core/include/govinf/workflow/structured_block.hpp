#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "govinf/core/block.hpp"
#include "govinf/core/errors.hpp"
#include "govinf/core/types.hpp"

namespace govinf {

/// A stage output did not honour its block contract.
/// Codes: MISSING_BLOCK, MALFORMED_BLOCK, UNKNOWN_CLASS.
class StageParseError : public Error {
public:
    StageParseError(std::string code, const std::string& message, std::string offending = {})
        : Error(std::move(code), message), offending_(std::move(offending)) {}

    /// For UNKNOWN_CLASS, the rejected class string.
    [[nodiscard]] const std::string& offending() const noexcept { return offending_; }

private:
    std::string offending_;
};

struct StructuredBlock {
    std::string objective;
    std::vector<InstrumentDeclaration> declarations;
};

/// Parses the last fenced block of a stage output. The block holds a JSON
/// object with a non-empty string "objective"; for Anchoring and
/// OperationalDesign an "instruments" array is also required, each entry
/// {class, name, purpose?, scope?, limitations?, institutional_embedding?}.
/// Class names match the taxonomy case-insensitively. Instruments on other
/// stages are ignored. Declarations are tagged with `checkpoint_index`.
[[nodiscard]] StructuredBlock parse_structured_block(std::string_view raw_output, StageKind stage,
                                                     std::size_t checkpoint_index = 0);

/// Canonical JSON of a parsed block ({"instruments": [...], "objective": ...}),
/// used to hand prior artifacts to later stages.
[[nodiscard]] std::string block_to_json(const StructuredBlock& block);

}  // namespace govinf
