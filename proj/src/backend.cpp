#include "hiss/backend.hpp"

#include <chrono>
#include <thread>

#include "hiss/errors.hpp"
#include "hiss/text.hpp"

namespace hiss {

const char* to_string(FinishReason r) {
    switch (r) {
        case FinishReason::stop_sequence_hit: return "stop_sequence_hit";
        case FinishReason::length: return "length";
        case FinishReason::natural_end: return "natural_end";
    }
    return "natural_end";
}

void validate_request(const CompletionRequest& request) {
    require(!request.prompt.empty(), ErrorCode::precondition, "empty prompt");
    require(request.temperature >= 0.0, ErrorCode::precondition, "negative temperature");
    require(request.max_tokens > 0, ErrorCode::precondition, "max_tokens must be positive");
    require(request.stop_sequences.size() <= 4, ErrorCode::precondition,
            "at most 4 stop sequences");
    for (const auto& s : request.stop_sequences) {
        require(!s.empty(), ErrorCode::precondition, "empty stop sequence entry");
    }
}

CompletionResponse apply_stops(const std::string& continuation,
                               const std::vector<std::string>& stops,
                               FinishReason fallthrough) {
    std::size_t best_pos = std::string::npos;
    const std::string* best_stop = nullptr;
    for (const auto& stop : stops) {
        std::size_t pos = text::ifind(continuation, stop);
        if (pos == std::string::npos) continue;
        if (pos < best_pos || (pos == best_pos && best_stop && stop.size() > best_stop->size())) {
            best_pos = pos;
            best_stop = &stop;
        }
    }
    if (best_stop == nullptr) {
        return CompletionResponse{continuation, fallthrough, std::nullopt};
    }
    return CompletionResponse{continuation.substr(0, best_pos),
                              FinishReason::stop_sequence_hit, *best_stop};
}

CompletionResponse with_retry(Backend& backend, const CompletionRequest& request,
                              const RetryPolicy& policy) {
    require(policy.max_attempts >= 1, ErrorCode::precondition, "max_attempts must be >= 1");
    int delay_ms = policy.backoff_base_ms;
    for (int attempt = 1;; ++attempt) {
        try {
            return backend.complete(request);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::backend_unavailable || attempt >= policy.max_attempts)
                throw;
        }
        if (delay_ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
        delay_ms *= 2;
    }
}

}  // namespace hiss
