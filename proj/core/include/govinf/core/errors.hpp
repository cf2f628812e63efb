#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace govinf {

/// Base for every error raised by the library. `code()` is a stable,
/// machine-readable identifier; `what()` carries the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    [[nodiscard]] const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// A caller broke an operation's precondition.
class ContractError : public Error {
public:
    explicit ContractError(const std::string& message) : Error("CONTRACT", message) {}
};

/// Malformed serialized trace or report.
class TraceFormatError : public Error {
public:
    TraceFormatError(const std::string& message, std::optional<std::size_t> byte_offset,
                     std::string field_path)
        : Error("PARSE", format(message, byte_offset, field_path)),
          byte_offset_(byte_offset),
          field_path_(std::move(field_path)) {}

    [[nodiscard]] std::optional<std::size_t> byte_offset() const noexcept { return byte_offset_; }
    [[nodiscard]] const std::string& field_path() const noexcept { return field_path_; }

private:
    static std::string format(const std::string& message, std::optional<std::size_t> offset,
                              const std::string& path) {
        std::string out = message;
        if (offset) out += " (byte " + std::to_string(*offset) + ")";
        if (!path.empty()) out += " at " + path;
        return out;
    }

    std::optional<std::size_t> byte_offset_;
    std::string field_path_;
};

class VersionError : public Error {
public:
    explicit VersionError(long long found)
        : Error("VERSION", "unsupported schema_version " + std::to_string(found)), found_(found) {}

    [[nodiscard]] long long found() const noexcept { return found_; }

private:
    long long found_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message) : Error("CONFIG", message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error("IO", message) {}
};

}  // namespace govinf
