#include "hiss/http_backend.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "hiss/errors.hpp"

namespace hiss {

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
    const std::string& url = config_.endpoint;
    std::size_t scheme_end = url.find("://");
    require(scheme_end != std::string::npos, ErrorCode::precondition,
            "endpoint must be a full URL: " + url);
    std::size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        scheme_host_ = url;
        path_ = "/";
    } else {
        scheme_host_ = url.substr(0, path_start);
        path_ = url.substr(path_start);
    }
}

CompletionResponse HttpBackend::parse_response_body(const std::string& body,
                                                    const CompletionRequest& request) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::backend_unavailable, std::string("unparseable completion reply: ") + e.what());
    }
    std::string generated;
    std::string server_reason;
    if (j.contains("choices") && j.at("choices").is_array() && !j.at("choices").empty()) {
        const auto& choice = j.at("choices").at(0);
        generated = choice.value("text", std::string{});
        server_reason = choice.value("finish_reason", std::string{});
    } else if (j.contains("text")) {
        generated = j.at("text").get<std::string>();
        server_reason = j.value("finish_reason", std::string{});
    } else {
        fail(ErrorCode::backend_unavailable, "completion reply carries no text field");
    }

    FinishReason fallthrough =
        server_reason == "length" ? FinishReason::length : FinishReason::natural_end;
    // A server that honored a stop already removed it; re-applying locally is
    // a no-op then, and enforces the contract when it did not.
    return apply_stops(generated, request.stop_sequences, fallthrough);
}

CompletionResponse HttpBackend::complete(const CompletionRequest& request) {
    validate_request(request);

    nlohmann::json body{
        {"model", config_.model},
        {"prompt", request.prompt},
        {"temperature", request.temperature},
        {"max_tokens", request.max_tokens},
    };
    if (!request.stop_sequences.empty()) body["stop"] = request.stop_sequences;

    httplib::Client client(scheme_host_);
    client.set_connection_timeout(config_.timeout_ms / 1000, (config_.timeout_ms % 1000) * 1000);
    client.set_read_timeout(config_.timeout_ms / 1000, (config_.timeout_ms % 1000) * 1000);

    httplib::Headers headers{{"Content-Type", "application/json"}};
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key != nullptr && *key) {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    auto result = client.Post(path_, headers, body.dump(), "application/json");
    if (!result) {
        fail(ErrorCode::backend_unavailable,
             "no response from " + config_.endpoint + " (" + httplib::to_string(result.error()) + ")");
    }
    if (result->status == 429 || result->status == 402) {
        fail(ErrorCode::budget_exceeded, "backend returned status " + std::to_string(result->status));
    }
    if (result->status < 200 || result->status >= 300) {
        fail(ErrorCode::backend_unavailable,
             "backend returned status " + std::to_string(result->status));
    }
    return parse_response_body(result->body, request);
}

}  // namespace hiss
