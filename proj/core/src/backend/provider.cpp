#include "govinf/backend/provider.hpp"

namespace govinf {

void ModelRequest::validate() const {
    if (!(sampling.temperature >= 0.0)) throw ContractError("temperature must be >= 0");
    if (!(sampling.top_p > 0.0 && sampling.top_p <= 1.0)) {
        throw ContractError("top_p must be in (0, 1]");
    }
    if (sampling.max_tokens <= 0) throw ContractError("max_tokens must be > 0");
}

bool is_retryable(const std::exception& e) noexcept {
    if (dynamic_cast<const TransportError*>(&e) != nullptr) return true;
    if (const auto* p = dynamic_cast<const ProviderError*>(&e)) return p->retryable();
    return false;
}

std::string_view to_string(InvocationRole role) {
    switch (role) {
        case InvocationRole::kCua: return "cua";
        case InvocationRole::kBaseline: return "baseline";
        case InvocationRole::kExtraction: return "extraction";
    }
    return "unknown";
}

}  // namespace govinf
