#include "govinf/audit/store.hpp"

#include <fstream>
#include <sstream>

#include "core/json_util.hpp"
#include "govinf/core/serialize.hpp"

namespace govinf {
namespace {

using detail::Json;

std::string read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read store " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string_view> split_lines(std::string_view contents) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < contents.size()) {
        auto nl = contents.find('\n', pos);
        if (nl == std::string_view::npos) nl = contents.size();
        lines.push_back(contents.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

void check_header(std::string_view line) {
    Json header;
    try {
        header = Json::parse(line.begin(), line.end());
    } catch (const Json::parse_error& e) {
        throw StoreError(1, std::string("malformed header: ") + e.what());
    }
    if (!header.is_object() || header.size() != 1 || !header.contains("schema_version") ||
        !header["schema_version"].is_number_integer()) {
        throw StoreError(1, "header must be {\"schema_version\": <int>}");
    }
    const auto version = header["schema_version"].get<long long>();
    if (version != kSchemaVersion) throw VersionError(version);
}

std::vector<std::string_view> body_lines(std::string_view contents) {
    auto lines = split_lines(contents);
    if (lines.empty()) throw StoreError(1, "store has no header");
    check_header(lines.front());
    lines.erase(lines.begin());
    return lines;
}

}  // namespace

TraceStore::TraceStore(std::filesystem::path path) : path_(std::move(path)) {
    std::error_code ec;
    const bool exists = std::filesystem::exists(path_, ec);
    if (!exists || std::filesystem::file_size(path_, ec) == 0) {
        if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path(), ec);
        std::ofstream out(path_, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot create store " + path_.string());
        out << kStoreHeader << '\n';
        if (!out) throw IoError("cannot write store header to " + path_.string());
        return;
    }
    const auto contents = read_all(path_);
    (void)body_lines(contents);
    if (contents.back() != '\n') {
        throw StoreError(split_lines(contents).size(), "store ends with a partial line");
    }
}

void TraceStore::append(const InferenceTrace& trace) { append(std::span(&trace, 1)); }

void TraceStore::append(std::span<const InferenceTrace> traces) {
    std::string lines;
    for (const auto& t : traces) {
        lines += serialize_trace(t);
        lines.push_back('\n');
    }
    std::lock_guard lock(mutex_);
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) throw IoError("cannot open store " + path_.string() + " for append");
    out.write(lines.data(), static_cast<std::streamsize>(lines.size()));
    out.flush();
    if (!out) throw IoError("append to " + path_.string() + " failed");
}

void store_traces(const std::filesystem::path& path, std::span<const InferenceTrace> traces) {
    TraceStore(path).append(traces);
}

std::vector<StoreLine> scan_store(const std::filesystem::path& path) {
    const auto contents = read_all(path);
    const auto lines = body_lines(contents);
    std::vector<StoreLine> out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        StoreLine entry;
        entry.line = i + 2;
        try {
            entry.trace = deserialize_trace(lines[i]);
            entry.validation = validate_trace(*entry.trace);
        } catch (const Error& e) {
            entry.parse_error = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<InferenceTrace> load_traces(const std::filesystem::path& path) {
    std::vector<InferenceTrace> traces;
    for (auto& entry : scan_store(path)) {
        if (!entry.trace) throw StoreError(entry.line, entry.parse_error);
        if (!entry.validation.ok()) {
            throw StoreError(entry.line, "invalid trace: " + entry.validation.violations.front().code);
        }
        traces.push_back(std::move(*entry.trace));
    }
    return traces;
}

}  // namespace govinf
