#pragma once

#include <string>

#include "hiss/backend.hpp"

namespace hiss {

struct HttpBackendConfig {
    std::string endpoint = "http://localhost:8080/v1/completions";
    std::string model = "completion-model";
    std::string api_key_env = "HISS_LLM_API_KEY";
    int timeout_ms = 60000;
};

/// Client for a completion-over-HTTP endpoint: JSON body with prompt,
/// temperature, max_tokens and stop list; JSON reply with the generated
/// text. Stops are re-applied locally, so the contract holds even when the
/// server ignores them.
class HttpBackend : public Backend {
public:
    explicit HttpBackend(HttpBackendConfig config);

    CompletionResponse complete(const CompletionRequest& request) override;
    std::string id() const override { return "http:" + config_.model; }

    /// Parses a completion reply body; exposed separately so the wire format
    /// is testable without a server.
    static CompletionResponse parse_response_body(const std::string& body,
                                                  const CompletionRequest& request);

private:
    HttpBackendConfig config_;
    std::string scheme_host_;
    std::string path_;
};

}  // namespace hiss
