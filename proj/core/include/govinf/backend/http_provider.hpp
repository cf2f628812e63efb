#pragma once

#include <chrono>
#include <string>
#include <string_view>

#include "govinf/backend/provider.hpp"

namespace govinf {

/// Parts of an http(s) URL the client needs.
struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string path;    // begins with '/'
};

/// Throws ConfigError for anything that is not an absolute http(s) URL.
[[nodiscard]] Endpoint parse_endpoint(std::string_view url);

struct HttpProviderOptions {
    std::string url;  // full chat-completions URL
    std::string model;
    std::string api_key;  // sent as a bearer token when non-empty
    std::chrono::milliseconds timeout{120000};
    RetryPolicy retry;
};

/// Chat-completion wire shape: a single user message, sampling fields at the
/// top level, completion text from choices[0].message.content and token counts
/// from usage.
[[nodiscard]] std::string build_chat_request(std::string_view model, const ModelRequest& request);
/// Throws ProviderError (non-retryable) if the body lacks the expected fields.
[[nodiscard]] ModelResponse parse_chat_response(int status, std::string_view body);

/// Live backend speaking the chat-completion protocol over HTTP(S).
class HttpProvider : public ModelProvider {
public:
    explicit HttpProvider(HttpProviderOptions options);

    [[nodiscard]] std::string describe() const override;

private:
    ModelResponse do_invoke(const ModelRequest& request) override;
    ModelResponse attempt(const std::string& body) const;

    HttpProviderOptions options_;
    Endpoint endpoint_;
};

/// POSTs a JSON body and returns (status, body). Network failures become
/// TransportError; statuses are returned as-is. Shared with the remote embedder.
struct HttpResult {
    int status = 0;
    std::string body;
};
[[nodiscard]] HttpResult post_json(const Endpoint& endpoint, std::string_view body,
                                   std::string_view api_key, std::chrono::milliseconds timeout);

/// Maps a non-2xx status to ProviderError; 408, 429 and 5xx are retryable.
[[noreturn]] void throw_for_status(int status, std::string_view body);

}  // namespace govinf
