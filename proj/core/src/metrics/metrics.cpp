#include "govinf/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "govinf/core/errors.hpp"
#include "govinf/core/text.hpp"

namespace govinf {

double semantic_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dimension() != b.dimension()) {
        throw ContractError("embedding dimensions differ: " + std::to_string(a.dimension()) +
                            " vs " + std::to_string(b.dimension()));
    }
    const bool a_zero = a.is_zero();
    const bool b_zero = b.is_zero();
    if (a_zero && b_zero) return 1.0;
    if (a_zero || b_zero) return 0.0;

    const auto av = a.values();
    const auto bv = b.values();
    double dot = 0.0;
    double aa = 0.0;
    double bb = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i) {
        dot += av[i] * bv[i];
        aa += av[i] * av[i];
        bb += bv[i] * bv[i];
    }
    const double cosine = dot / (std::sqrt(aa) * std::sqrt(bb));
    return std::clamp(cosine, 0.0, 1.0);
}

double semantic_distance(const EmbeddingVector& a, const EmbeddingVector& b) {
    return 1.0 - semantic_similarity(a, b);
}

TdsResult compute_tds(const InferenceTrace& trace, const Embedder& embedder) {
    if (trace.checkpoints.empty()) throw ContractError("TDS needs at least one checkpoint");
    const auto anchor = embedder.embed(trace.anchor.text());
    TdsResult result;
    double sum = 0.0;
    for (const auto& cp : trace.checkpoints) {
        if (text::trim(cp.objective).empty()) {
            throw ContractError("checkpoint " + std::to_string(cp.index) +
                                " has no objective; run post-hoc extraction first");
        }
        const double d = semantic_distance(anchor, embedder.embed(cp.objective));
        result.per_stage.push_back({cp.index, d});
        sum += d;
    }
    result.tds = sum / static_cast<double>(trace.checkpoints.size());
    return result;
}

double compute_eas(const InferenceTrace& trace, const Embedder& embedder) {
    if (trace.synthesis_text.empty()) throw ContractError("EAS needs a non-empty synthesis");
    return semantic_similarity(embedder.embed(trace.anchor.text()),
                               embedder.embed(trace.synthesis_text));
}

double compute_aee(double tds, double eas) {
    if (!(tds >= 0.0 && tds <= 1.0) || !(eas >= 0.0 && eas <= 1.0)) {
        throw ContractError("AEE inputs must lie in [0, 1]");
    }
    return tds * eas;
}

IciResult compute_ici(const InferenceTrace& trace) {
    std::set<UciClass> classes;
    for (const auto& d : trace.declarations) classes.insert(d.uci_class);
    return {classes.size(), static_cast<double>(classes.size()) / static_cast<double>(kUciTaxonomySize)};
}

double compute_ies(const InferenceTrace& trace) {
    if (trace.declarations.empty()) return 0.0;
    double completeness = 0.0;
    for (const auto& d : trace.declarations) completeness += d.completeness();
    completeness /= static_cast<double>(trace.declarations.size());
    return compute_ici(trace).ici_n * completeness;
}

std::size_t compute_lwc(const InferenceTrace& trace) {
    const std::size_t expected = trace.paradigm == Paradigm::kCua ? kCuaConvergenceIndex
                                                                  : kBaselineConvergenceIndex;
    if (trace.convergence_index < 1 || trace.convergence_index > trace.checkpoints.size()) {
        throw ContractError("convergence index " + std::to_string(trace.convergence_index) +
                            " outside 1.." + std::to_string(trace.checkpoints.size()));
    }
    if (trace.convergence_index != expected) {
        throw ContractError("convergence index " + std::to_string(trace.convergence_index) +
                            " inconsistent with paradigm " + std::string(to_string(trace.paradigm)));
    }
    return trace.convergence_index;
}

TokenTotals token_totals(const InferenceTrace& trace) {
    TokenTotals totals;
    for (const auto& cp : trace.checkpoints) {
        totals.reasoning += cp.prompt_tokens + cp.completion_tokens;
        totals.measurement += cp.measurement_tokens;
    }
    return totals;
}

}  // namespace govinf
