#include "govinf/backend/embedder.hpp"

#include <algorithm>
#include <cmath>

#include "core/json_util.hpp"

namespace govinf {
namespace {

using detail::Json;

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point starting at s[i]; advances i. Returns kInvalid for
// a malformed sequence (consuming one byte).
char32_t decode(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return kInvalid;
    }
    if (i + len > s.size()) {
        ++i;
        return kInvalid;
    }
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return kInvalid;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
        ++i;
        return kInvalid;
    }
    i += len;
    return cp;
}

void encode(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_word_char(char32_t cp) {
    if (cp < 0x80) {
        return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
    }
    if (cp >= 0x00C0 && cp <= 0x024F) return cp != 0x00D7 && cp != 0x00F7;
    return cp >= 0x0370 && cp <= 0x04FF;
}

char32_t to_lower(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
    // Latin Extended-A: upper/lower alternate, with a parity flip at U+0138.
    if ((cp >= 0x0100 && cp <= 0x0137) || (cp >= 0x014A && cp <= 0x0177)) return cp | 1;
    if ((cp >= 0x0139 && cp <= 0x0148) || (cp >= 0x0179 && cp <= 0x017E)) return cp % 2 ? cp + 1 : cp;
    if (cp == 0x0178) return 0x00FF;
    // Greek capitals with tonos.
    if (cp == 0x0386) return 0x03AC;
    if (cp >= 0x0388 && cp <= 0x038A) return cp + 0x25;
    if (cp == 0x038C) return 0x03CC;
    if (cp == 0x038E || cp == 0x038F) return cp + 0x3F;
    if (cp >= 0x0391 && cp <= 0x03AB && cp != 0x03A2) return cp + 0x20;
    if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
    if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;
    return cp;
}

}  // namespace

bool EmbeddingVector::is_zero() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double EmbeddingVector::norm() const noexcept {
    double sum = 0.0;
    for (double v : values_) sum += v * v;
    return std::sqrt(sum);
}

EmbeddingVector normalized(std::vector<double> values) {
    double sum = 0.0;
    for (double v : values) sum += v * v;
    if (sum > 0.0) {
        const double norm = std::sqrt(sum);
        for (double& v : values) v /= norm;
    }
    return EmbeddingVector(std::move(values));
}

std::vector<std::string> reference_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t i = 0;
    while (i < text.size()) {
        const char32_t cp = decode(text, i);
        if (cp != kInvalid && is_word_char(cp)) {
            encode(to_lower(cp), current);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

EmbeddingVector ReferenceEmbedder::embed(std::string_view text) const {
    std::vector<double> counts(kEmbeddingDimension, 0.0);
    for (const auto& token : reference_tokens(text)) {
        counts[fnv1a64(token) % kEmbeddingDimension] += 1.0;
    }
    return normalized(std::move(counts));
}

RemoteEmbedder::RemoteEmbedder(RemoteEmbedderOptions options)
    : options_(std::move(options)), endpoint_(parse_endpoint(options_.url)) {
    if (options_.model.empty()) throw ConfigError("embedder.model is required for remote embedders");
}

std::string RemoteEmbedder::id() const {
    return "remote:" + options_.model + "@" + options_.url + ":d" +
           std::to_string(kEmbeddingDimension);
}

EmbeddingVector RemoteEmbedder::embed(std::string_view text) const {
    if (reference_tokens(text).empty()) return EmbeddingVector(std::vector<double>(kEmbeddingDimension, 0.0));

    const std::string body = detail::canonical_dump(Json{
        {"model", options_.model}, {"input", text}, {"dimensions", kEmbeddingDimension}});
    return with_retries(options_.retry, [&] {
        const auto result = post_json(endpoint_, body, options_.api_key, options_.timeout);
        if (result.status < 200 || result.status >= 300) throw_for_status(result.status, result.body);
        std::vector<double> values;
        try {
            values = Json::parse(result.body).at("data").at(0).at("embedding").get<std::vector<double>>();
        } catch (const Json::exception&) {
            throw ProviderError(result.status, "response lacks data[0].embedding", false);
        }
        if (values.size() != kEmbeddingDimension) {
            throw ProviderError(result.status,
                                "embedding has dimension " + std::to_string(values.size()), false);
        }
        return normalized(std::move(values));
    });
}

std::unique_ptr<Embedder> make_embedder_from_id(std::string_view id) {
    if (id == ReferenceEmbedder::kId) return std::make_unique<ReferenceEmbedder>();
    return nullptr;
}

}  // namespace govinf
