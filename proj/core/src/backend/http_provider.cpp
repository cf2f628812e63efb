#include "govinf/backend/http_provider.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include "core/json_util.hpp"

namespace govinf {
namespace {

using detail::Json;

constexpr std::size_t kExcerptBytes = 200;

std::string excerpt(std::string_view body) {
    return std::string(body.substr(0, kExcerptBytes));
}

}  // namespace

Endpoint parse_endpoint(std::string_view url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) throw ConfigError("URL lacks a scheme: " + std::string(url));
    const auto scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") {
        throw ConfigError("unsupported URL scheme: " + std::string(scheme));
    }
    const auto host_begin = scheme_end + 3;
    const auto path_begin = url.find('/', host_begin);
    Endpoint ep;
    ep.origin = std::string(url.substr(0, path_begin));
    ep.path = path_begin == std::string_view::npos ? "/" : std::string(url.substr(path_begin));
    if (ep.origin.size() == host_begin) throw ConfigError("URL lacks a host: " + std::string(url));
    return ep;
}

HttpResult post_json(const Endpoint& endpoint, std::string_view body, std::string_view api_key,
                     std::chrono::milliseconds timeout) {
    httplib::Client client(endpoint.origin);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);

    httplib::Headers headers;
    if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + std::string(api_key));

    auto res = client.Post(endpoint.path, headers, body.data(), body.size(), "application/json");
    if (!res) {
        throw TransportError("request to " + endpoint.origin + endpoint.path +
                             " failed: " + httplib::to_string(res.error()));
    }
    return HttpResult{res->status, res->body};
}

void throw_for_status(int status, std::string_view body) {
    const bool retryable = status == 408 || status == 429 || status >= 500;
    throw ProviderError(status, excerpt(body), retryable);
}

std::string build_chat_request(std::string_view model, const ModelRequest& request) {
    Json body{
        {"model", model},
        {"messages", Json::array({Json{{"role", "user"}, {"content", request.prompt}}})},
        {"temperature", request.sampling.temperature},
        {"top_p", request.sampling.top_p},
        {"max_tokens", request.sampling.max_tokens},
    };
    if (request.sampling.seed) body["seed"] = *request.sampling.seed;
    return detail::canonical_dump(body);
}

ModelResponse parse_chat_response(int status, std::string_view body) {
    Json doc;
    try {
        doc = Json::parse(body.begin(), body.end());
    } catch (const Json::parse_error&) {
        throw ProviderError(status, "unparseable response: " + excerpt(body), false);
    }
    try {
        ModelResponse out;
        const auto& content = doc.at("choices").at(0).at("message").at("content");
        out.text = content.is_null() ? std::string() : content.get<std::string>();
        if (auto usage = doc.find("usage"); usage != doc.end() && usage->is_object()) {
            out.prompt_tokens = usage->value("prompt_tokens", std::uint64_t{0});
            out.completion_tokens = usage->value("completion_tokens", std::uint64_t{0});
        }
        return out;
    } catch (const Json::exception&) {
        throw ProviderError(status, "response lacks choices[0].message.content: " + excerpt(body),
                            false);
    }
}

HttpProvider::HttpProvider(HttpProviderOptions options)
    : options_(std::move(options)), endpoint_(parse_endpoint(options_.url)) {
    if (options_.model.empty()) throw ConfigError("backend.model is required for the http backend");
}

std::string HttpProvider::describe() const { return "http:" + options_.model + "@" + options_.url; }

ModelResponse HttpProvider::attempt(const std::string& body) const {
    const auto result = post_json(endpoint_, body, options_.api_key, options_.timeout);
    if (result.status < 200 || result.status >= 300) throw_for_status(result.status, result.body);
    return parse_chat_response(result.status, result.body);
}

ModelResponse HttpProvider::do_invoke(const ModelRequest& request) {
    const std::string body = build_chat_request(options_.model, request);
    return with_retries(options_.retry, [&] { return attempt(body); });
}

}  // namespace govinf
