#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include "govinf/core/errors.hpp"

namespace govinf {

struct SamplingParams {
    double temperature = 0.0;
    double top_p = 1.0;
    int max_tokens = 1024;
    std::optional<std::int64_t> seed = 42;

    bool operator==(const SamplingParams&) const = default;
};

struct ModelRequest {
    std::string prompt;
    SamplingParams sampling;

    /// Throws ContractError unless temperature >= 0, 0 < top_p <= 1 and
    /// max_tokens > 0.
    void validate() const;
};

struct ModelResponse {
    std::string text;
    std::uint64_t prompt_tokens = 0;
    std::uint64_t completion_tokens = 0;
};

/// Network failure or timeout. Always retryable.
class TransportError : public Error {
public:
    explicit TransportError(const std::string& message) : Error("TRANSPORT", message) {}
};

/// The provider answered, but not with a usable completion.
class ProviderError : public Error {
public:
    ProviderError(int status, std::string body_excerpt, bool retryable)
        : Error("PROVIDER", "provider returned status " + std::to_string(status) + ": " +
                                body_excerpt),
          status_(status),
          body_excerpt_(std::move(body_excerpt)),
          retryable_(retryable) {}

    [[nodiscard]] int status() const noexcept { return status_; }
    [[nodiscard]] const std::string& body_excerpt() const noexcept { return body_excerpt_; }
    [[nodiscard]] bool retryable() const noexcept { return retryable_; }

private:
    int status_;
    std::string body_excerpt_;
    bool retryable_;
};

class ScriptUnderrunError : public Error {
public:
    explicit ScriptUnderrunError(std::size_t calls)
        : Error("SCRIPT_UNDERRUN",
                "scripted provider exhausted after " + std::to_string(calls) + " responses") {}
};

/// A language-model backend. Implementations must tolerate concurrent
/// invoke() calls.
class ModelProvider {
public:
    virtual ~ModelProvider() = default;

    /// Validates the request, then forwards to the implementation.
    ModelResponse invoke(const ModelRequest& request) {
        request.validate();
        return do_invoke(request);
    }

    /// Identifies the backend (kind and endpoint/model) for run digests.
    [[nodiscard]] virtual std::string describe() const = 0;

private:
    virtual ModelResponse do_invoke(const ModelRequest& request) = 0;
};

struct RetryPolicy {
    int max_attempts = 3;
    std::chrono::milliseconds initial_backoff{500};
    double multiplier = 2.0;
};

/// True for TransportError and for ProviderError flagged retryable.
[[nodiscard]] bool is_retryable(const std::exception& e) noexcept;

/// Calls `attempt` up to policy.max_attempts times, sleeping with exponential
/// backoff between retryable failures. Rethrows the last error.
template <typename Fn>
auto with_retries(const RetryPolicy& policy, Fn&& attempt) -> decltype(attempt()) {
    auto backoff = policy.initial_backoff;
    for (int n = 1;; ++n) {
        try {
            return attempt();
        } catch (const std::exception& e) {
            if (n >= policy.max_attempts || !is_retryable(e)) throw;
        }
        std::this_thread::sleep_for(backoff);
        backoff = std::chrono::milliseconds(
            static_cast<long long>(static_cast<double>(backoff.count()) * policy.multiplier));
    }
}

/// Which part of a run an invocation belongs to. Scripted backends keep one
/// script per role.
enum class InvocationRole { kCua, kBaseline, kExtraction };

[[nodiscard]] std::string_view to_string(InvocationRole role);

/// Hands out providers for individual runs. Scripted sources return a fresh
/// provider per call so concurrent runs replay their scripts independently;
/// live sources share one thread-safe client.
class ProviderSource {
public:
    virtual ~ProviderSource() = default;

    [[nodiscard]] virtual std::shared_ptr<ModelProvider> provider_for(std::string_view prompt_id,
                                                                      InvocationRole role) const = 0;

    /// Everything about the backend that can change outputs, for run digests.
    [[nodiscard]] virtual std::string digest_material() const = 0;
};

/// Wraps one shared provider.
class SharedProviderSource : public ProviderSource {
public:
    explicit SharedProviderSource(std::shared_ptr<ModelProvider> provider)
        : provider_(std::move(provider)) {}

    [[nodiscard]] std::shared_ptr<ModelProvider> provider_for(std::string_view,
                                                              InvocationRole) const override {
        return provider_;
    }
    [[nodiscard]] std::string digest_material() const override { return provider_->describe(); }

private:
    std::shared_ptr<ModelProvider> provider_;
};

}  // namespace govinf
