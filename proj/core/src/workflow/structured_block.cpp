#include "govinf/workflow/structured_block.hpp"

#include <algorithm>
#include <cctype>

#include "core/json_util.hpp"
#include "govinf/core/text.hpp"

namespace govinf {
namespace {

using detail::Json;

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

std::optional<UciClass> match_class(std::string_view s) {
    const auto trimmed = text::trim(s);
    for (auto c : kAllUciClasses) {
        if (iequals(trimmed, to_string(c))) return c;
    }
    return std::nullopt;
}

[[noreturn]] void malformed(const std::string& what) {
    throw StageParseError("MALFORMED_BLOCK", "malformed structured block: " + what);
}

std::optional<std::string> optional_attribute(const Json& entry, const char* key,
                                              const std::string& where) {
    auto it = entry.find(key);
    if (it == entry.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) malformed(where + "." + key + " must be a string");
    return it->get<std::string>();
}

InstrumentDeclaration read_instrument(const Json& entry, const std::string& where,
                                      std::size_t checkpoint_index) {
    if (!entry.is_object()) malformed(where + " must be an object");
    auto cls = entry.find("class");
    if (cls == entry.end() || !cls->is_string()) malformed(where + ".class must be a string");
    auto name = entry.find("name");
    if (name == entry.end() || !name->is_string() || text::trim(name->get<std::string>()).empty()) {
        malformed(where + ".name must be a non-empty string");
    }

    const auto class_name = cls->get<std::string>();
    auto uci = match_class(class_name);
    if (!uci) {
        throw StageParseError("UNKNOWN_CLASS", "unknown UCI class \"" + class_name + "\"",
                              class_name);
    }

    InstrumentDeclaration d;
    d.uci_class = *uci;
    d.name = name->get<std::string>();
    d.purpose = optional_attribute(entry, "purpose", where);
    d.scope = optional_attribute(entry, "scope", where);
    d.limitations = optional_attribute(entry, "limitations", where);
    d.institutional_embedding = optional_attribute(entry, "institutional_embedding", where);
    d.source_checkpoint = checkpoint_index;
    return d;
}

Json optional_json(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

}  // namespace

StructuredBlock parse_structured_block(std::string_view raw_output, StageKind stage,
                                       std::size_t checkpoint_index) {
    const auto split = split_last_block(raw_output);
    if (!split.body) {
        throw StageParseError("MISSING_BLOCK", "no " + std::string(kBlockOpen) + " block found");
    }

    Json doc;
    try {
        doc = Json::parse(*split.body);
    } catch (const Json::parse_error& e) {
        malformed(e.what());
    }
    if (!doc.is_object()) malformed("block is not a JSON object");

    StructuredBlock block;
    auto objective = doc.find("objective");
    if (objective == doc.end() || !objective->is_string()) malformed("objective must be a string");
    block.objective = std::string(text::trim(objective->get<std::string>()));
    if (block.objective.empty()) malformed("objective is empty");

    const bool harvest = stage == StageKind::kAnchoring || stage == StageKind::kOperationalDesign;
    if (!harvest) return block;

    auto instruments = doc.find("instruments");
    if (instruments == doc.end() || !instruments->is_array()) {
        malformed("instruments must be an array for stage " + std::string(to_string(stage)));
    }
    for (std::size_t i = 0; i < instruments->size(); ++i) {
        block.declarations.push_back(read_instrument(
            (*instruments)[i], "instruments[" + std::to_string(i) + "]", checkpoint_index));
    }
    return block;
}

std::string block_to_json(const StructuredBlock& block) {
    Json instruments = Json::array();
    for (const auto& d : block.declarations) {
        instruments.push_back(Json{
            {"class", to_string(d.uci_class)},
            {"name", d.name},
            {"purpose", optional_json(d.purpose)},
            {"scope", optional_json(d.scope)},
            {"limitations", optional_json(d.limitations)},
            {"institutional_embedding", optional_json(d.institutional_embedding)},
        });
    }
    return detail::canonical_dump(Json{{"objective", block.objective}, {"instruments", instruments}});
}

}  // namespace govinf
