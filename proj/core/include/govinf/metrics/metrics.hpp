#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "govinf/backend/embedder.hpp"
#include "govinf/core/types.hpp"

namespace govinf {

// Similarity and distance are clamped cosine: similarity = max(0, cos),
// distance = 1 - similarity. Zero vectors: both zero -> similarity 1;
// exactly one zero -> similarity 0. Unequal dimensions raise ContractError.
[[nodiscard]] double semantic_similarity(const EmbeddingVector& a, const EmbeddingVector& b);
[[nodiscard]] double semantic_distance(const EmbeddingVector& a, const EmbeddingVector& b);

struct StageDistance {
    std::size_t checkpoint = 0;
    double distance = 0.0;

    bool operator==(const StageDistance&) const = default;
};

struct TdsResult {
    double tds = 0.0;
    std::vector<StageDistance> per_stage;
};

/// Mean anchor-to-objective distance over every checkpoint.
[[nodiscard]] TdsResult compute_tds(const InferenceTrace& trace, const Embedder& embedder);

/// Anchor-to-synthesis similarity. Empty synthesis raises ContractError.
[[nodiscard]] double compute_eas(const InferenceTrace& trace, const Embedder& embedder);

/// tds * eas; both must lie in [0, 1].
[[nodiscard]] double compute_aee(double tds, double eas);

struct IciResult {
    std::size_t ici = 0;
    double ici_n = 0.0;
};

/// Distinct declared UCI classes, and that count over the taxonomy size.
[[nodiscard]] IciResult compute_ici(const InferenceTrace& trace);

/// ici_n times the mean declaration completeness; 0 with no declarations.
[[nodiscard]] double compute_ies(const InferenceTrace& trace);

/// The trace's convergence index, after checking it against the paradigm
/// and checkpoint count.
[[nodiscard]] std::size_t compute_lwc(const InferenceTrace& trace);

struct TokenTotals {
    std::uint64_t reasoning = 0;    // prompt + completion
    std::uint64_t measurement = 0;  // post-hoc extraction
};

[[nodiscard]] TokenTotals token_totals(const InferenceTrace& trace);

}  // namespace govinf
