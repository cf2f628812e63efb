#pragma once

#include <cstddef>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "govinf/core/errors.hpp"
#include "govinf/core/types.hpp"
#include "govinf/core/validate.hpp"

namespace govinf {

inline constexpr std::string_view kStoreHeader = R"({"schema_version":1})";

/// Unreadable or corrupt store. `line` is 1-based (the header is line 1);
/// 0 when the problem is not tied to a line.
class StoreError : public Error {
public:
    StoreError(std::size_t line, const std::string& message)
        : Error("STORE", line ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Append-only JSON Lines trace store. The first line is the header
/// {"schema_version":1}; every further line is one canonical trace. Existing
/// lines are never rewritten. Appends from several threads are serialized.
class TraceStore {
public:
    /// Creates the file (with header) when missing or empty, otherwise checks
    /// the header. Throws StoreError, VersionError or IoError.
    explicit TraceStore(std::filesystem::path path);

    /// Each trace must pass validate_trace (ContractError otherwise).
    void append(const InferenceTrace& trace);
    void append(std::span<const InferenceTrace> traces);

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
    std::mutex mutex_;
};

void store_traces(const std::filesystem::path& path, std::span<const InferenceTrace> traces);

/// Reads and validates every line. Throws StoreError naming the first bad
/// line, or VersionError for a header with another schema_version.
[[nodiscard]] std::vector<InferenceTrace> load_traces(const std::filesystem::path& path);

/// One line of a store, parsed but not required to be valid.
struct StoreLine {
    std::size_t line = 0;
    std::optional<InferenceTrace> trace;  // empty when the line does not parse
    std::string parse_error;
    ValidationResult validation;
};

/// Like load_traces but reports per-line problems instead of stopping at the
/// first. Header problems still throw.
[[nodiscard]] std::vector<StoreLine> scan_store(const std::filesystem::path& path);

}  // namespace govinf
