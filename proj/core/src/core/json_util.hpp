#pragma once

// Private helpers for reading and writing the canonical JSON documents.
// nlohmann::json stores objects in std::map, so dump() emits keys in
// lexicographic byte order with no whitespace.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "govinf/core/errors.hpp"

namespace govinf::detail {

using Json = nlohmann::json;

[[nodiscard]] inline std::string canonical_dump(const Json& j) {
    return j.dump(-1, ' ', false, Json::error_handler_t::strict);
}

/// Parses bytes, mapping syntax errors to TraceFormatError with a byte offset.
[[nodiscard]] Json parse_document(std::string_view bytes);

/// Schema walker that remembers the field path for error messages.
class Reader {
public:
    Reader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {}

    [[nodiscard]] const Json& node() const noexcept { return node_; }
    [[nodiscard]] const std::string& path() const noexcept { return path_; }

    [[noreturn]] void fail(const std::string& message) const;

    void expect_object() const;
    void expect_array() const;
    /// Rejects keys outside `allowed` (object nodes only).
    void expect_keys(std::initializer_list<std::string_view> allowed) const;

    [[nodiscard]] Reader field(std::string_view key) const;
    [[nodiscard]] std::optional<Reader> optional_field(std::string_view key) const;  // absent or null -> nullopt
    [[nodiscard]] Reader element(std::size_t i) const;
    [[nodiscard]] std::size_t size() const;

    [[nodiscard]] std::string as_string() const;
    [[nodiscard]] std::optional<std::string> as_optional_string() const;  // null -> nullopt
    [[nodiscard]] std::uint64_t as_uint() const;
    [[nodiscard]] long long as_int() const;
    [[nodiscard]] double as_double() const;
    [[nodiscard]] bool as_bool() const;

private:
    const Json& node_;
    std::string path_;
};

}  // namespace govinf::detail
