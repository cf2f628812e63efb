#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "govinf/backend/http_provider.hpp"

namespace govinf {

inline constexpr std::size_t kEmbeddingDimension = 256;

/// L2-normalized embedding, or all zeros for text without tokens.
class EmbeddingVector {
public:
    EmbeddingVector() = default;
    explicit EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {}

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return values_.size(); }
    [[nodiscard]] bool is_zero() const noexcept;
    [[nodiscard]] double norm() const noexcept;
    [[nodiscard]] double operator[](std::size_t i) const { return values_.at(i); }

    bool operator==(const EmbeddingVector&) const = default;

private:
    std::vector<double> values_;
};

class Embedder {
public:
    virtual ~Embedder() = default;

    [[nodiscard]] virtual EmbeddingVector embed(std::string_view text) const = 0;
    /// Kind plus parameters. Metric reports are only comparable, and only
    /// re-auditable, under the same id.
    [[nodiscard]] virtual std::string id() const = 0;
    [[nodiscard]] virtual bool is_deterministic() const = 0;
};

/// FNV-1a, 64-bit.
[[nodiscard]] constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t hash = 14695981039346656037ULL;
    for (char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ULL;
    }
    return hash;
}

/// Lowercased tokens of `text`, split on every non-alphanumeric code point.
///
/// Input is decoded as UTF-8. Alphanumeric means ASCII letters and digits,
/// Latin-1 and Latin Extended-A/B letters (U+00C0..U+024F except U+00D7 and
/// U+00F7), Greek (U+0370..U+03FF) and Cyrillic (U+0400..U+04FF). Lowercasing
/// covers ASCII, U+00C0..U+00DE, Greek U+0391..U+03AB and Cyrillic
/// U+0400..U+042F; other letters pass through unchanged. Invalid UTF-8 bytes
/// act as separators. Tokens are returned re-encoded as UTF-8.
[[nodiscard]] std::vector<std::string> reference_tokens(std::string_view text);

/// Bag of hashed tokens: each token adds 1 to component fnv1a64(token) mod
/// 256, then the vector is L2-normalized.
class ReferenceEmbedder : public Embedder {
public:
    static constexpr std::string_view kId = "reference:fnv1a64-bow:d256";

    [[nodiscard]] EmbeddingVector embed(std::string_view text) const override;
    [[nodiscard]] std::string id() const override { return std::string(kId); }
    [[nodiscard]] bool is_deterministic() const override { return true; }
};

struct RemoteEmbedderOptions {
    std::string url;  // full embeddings URL
    std::string model;
    std::string api_key;
    std::chrono::milliseconds timeout{60000};
    RetryPolicy retry;
};

/// OpenAI-style embeddings endpoint asked for 256 dimensions; results are
/// re-normalized. Not deterministic, so never independently auditable.
class RemoteEmbedder : public Embedder {
public:
    explicit RemoteEmbedder(RemoteEmbedderOptions options);

    [[nodiscard]] EmbeddingVector embed(std::string_view text) const override;
    [[nodiscard]] std::string id() const override;
    [[nodiscard]] bool is_deterministic() const override { return false; }

private:
    RemoteEmbedderOptions options_;
    Endpoint endpoint_;
};

/// Rebuilds a deterministic embedder from its id; nullptr when the id names a
/// remote or unknown embedder.
[[nodiscard]] std::unique_ptr<Embedder> make_embedder_from_id(std::string_view id);

/// Scales to unit L2 norm; all-zero input stays zero.
[[nodiscard]] EmbeddingVector normalized(std::vector<double> values);

}  // namespace govinf
