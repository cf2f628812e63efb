#include "core/json_util.hpp"

#include <algorithm>

namespace govinf::detail {

Json parse_document(std::string_view bytes) {
    try {
        return Json::parse(bytes.begin(), bytes.end());
    } catch (const Json::parse_error& e) {
        throw TraceFormatError("malformed JSON", e.byte, "");
    }
}

void Reader::fail(const std::string& message) const {
    throw TraceFormatError(message, std::nullopt, path_.empty() ? "$" : path_);
}

void Reader::expect_object() const {
    if (!node_.is_object()) fail("expected object");
}

void Reader::expect_array() const {
    if (!node_.is_array()) fail("expected array");
}

void Reader::expect_keys(std::initializer_list<std::string_view> allowed) const {
    expect_object();
    for (const auto& item : node_.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            Reader(node_, path_ + "." + item.key()).fail("unknown field");
        }
    }
}

Reader Reader::field(std::string_view key) const {
    expect_object();
    const std::string k(key);
    auto it = node_.find(k);
    if (it == node_.end()) Reader(node_, path_ + "." + k).fail("missing field");
    return Reader(*it, path_ + "." + k);
}

std::optional<Reader> Reader::optional_field(std::string_view key) const {
    expect_object();
    const std::string k(key);
    auto it = node_.find(k);
    if (it == node_.end() || it->is_null()) return std::nullopt;
    return Reader(*it, path_ + "." + k);
}

Reader Reader::element(std::size_t i) const {
    expect_array();
    return Reader(node_.at(i), path_ + "[" + std::to_string(i) + "]");
}

std::size_t Reader::size() const {
    expect_array();
    return node_.size();
}

std::string Reader::as_string() const {
    if (!node_.is_string()) fail("expected string");
    return node_.get<std::string>();
}

std::optional<std::string> Reader::as_optional_string() const {
    if (node_.is_null()) return std::nullopt;
    return as_string();
}

std::uint64_t Reader::as_uint() const {
    if (!node_.is_number_unsigned()) fail("expected non-negative integer");
    return node_.get<std::uint64_t>();
}

long long Reader::as_int() const {
    if (!node_.is_number_integer()) fail("expected integer");
    return node_.get<long long>();
}

double Reader::as_double() const {
    if (!node_.is_number()) fail("expected number");
    return node_.get<double>();
}

bool Reader::as_bool() const {
    if (!node_.is_boolean()) fail("expected boolean");
    return node_.get<bool>();
}

}  // namespace govinf::detail
