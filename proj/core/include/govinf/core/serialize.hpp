#pragma once

#include <string>
#include <string_view>

#include "govinf/core/types.hpp"

namespace govinf {

/// Canonical JSON for a trace: UTF-8, keys sorted lexicographically, no
/// insignificant whitespace, no trailing newline. Structurally equal traces
/// produce identical bytes.
///
/// Throws ContractError if the trace fails validate_trace.
[[nodiscard]] std::string serialize_trace(const InferenceTrace& trace);

/// Inverse of serialize_trace. Throws TraceFormatError for malformed input
/// (with the byte offset for syntax errors and the field path for schema
/// errors) and VersionError for an unknown schema_version. Does not run
/// validate_trace.
[[nodiscard]] InferenceTrace deserialize_trace(std::string_view bytes);

}  // namespace govinf
