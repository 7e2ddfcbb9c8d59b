#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hiss {

enum class FinishReason { stop_sequence_hit, length, natural_end };

const char* to_string(FinishReason r);

struct CompletionRequest {
    std::string prompt;
    double temperature = 0.0;
    int max_tokens = 512;
    std::vector<std::string> stop_sequences;  // 0-4 entries
};

struct CompletionResponse {
    std::string text;
    FinishReason finish_reason = FinishReason::natural_end;
    std::optional<std::string> matched_stop;
};

/// Throws Precondition when a request breaks its invariants (empty prompt,
/// empty stop entry, more than four stops, negative temperature).
void validate_request(const CompletionRequest& request);

/// Truncates `continuation` at the earliest stop occurrence and reports which
/// stop fired. Matching is ASCII case-insensitive so a generated "No" halts a
/// lowercase "no" stop; ties at the same position go to the longest stop.
/// `fallthrough` is the finish reason when no stop occurs.
CompletionResponse apply_stops(const std::string& continuation,
                               const std::vector<std::string>& stops,
                               FinishReason fallthrough = FinishReason::natural_end);

/// Text-completion interface. Implementations must honor the stop contract:
/// response text never contains a stop sequence, and matched_stop is set
/// exactly when finish_reason is stop_sequence_hit.
class Backend {
public:
    virtual ~Backend() = default;
    virtual CompletionResponse complete(const CompletionRequest& request) = 0;
    virtual std::string id() const = 0;
};

struct RetryPolicy {
    int max_attempts = 3;
    int backoff_base_ms = 100;
};

/// Retries only BackendUnavailable, with exponential backoff; every other
/// outcome surfaces immediately.
CompletionResponse with_retry(Backend& backend, const CompletionRequest& request,
                              const RetryPolicy& policy);

}  // namespace hiss
