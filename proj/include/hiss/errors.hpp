#pragma once

#include <stdexcept>
#include <string>

namespace hiss {

enum class ErrorCode {
    precondition,
    // labels
    duplicate_label,
    empty_scheme,
    // backend
    backend_unavailable,
    budget_exceeded,
    script_exhausted,
    // search
    frozen_cache_miss,
    search_unavailable,
    malformed_cache_file,
    // protocol
    insufficient_demos,
    unparseable_decomposition,
    no_final_line,
    label_not_in_scheme,
    // datasets
    malformed_row,
    unknown_label,
    malformed_record,
    malformed_line,
    insufficient_pool,
    // eval
    length_mismatch,
    empty_matrix,
    unknown_id,
    // io
    io_failure,
};

const char* error_code_name(ErrorCode code);

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) fail(code, message);
}

}  // namespace hiss
