#include "hiss/errors.hpp"

namespace hiss {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::precondition: return "Precondition";
        case ErrorCode::duplicate_label: return "DuplicateLabel";
        case ErrorCode::empty_scheme: return "EmptyScheme";
        case ErrorCode::backend_unavailable: return "BackendUnavailable";
        case ErrorCode::budget_exceeded: return "BudgetExceeded";
        case ErrorCode::script_exhausted: return "ScriptExhausted";
        case ErrorCode::frozen_cache_miss: return "FrozenCacheMiss";
        case ErrorCode::search_unavailable: return "SearchUnavailable";
        case ErrorCode::malformed_cache_file: return "MalformedCacheFile";
        case ErrorCode::insufficient_demos: return "InsufficientDemos";
        case ErrorCode::unparseable_decomposition: return "UnparseableDecomposition";
        case ErrorCode::no_final_line: return "NoFinalLine";
        case ErrorCode::label_not_in_scheme: return "LabelNotInScheme";
        case ErrorCode::malformed_row: return "MalformedRow";
        case ErrorCode::unknown_label: return "UnknownLabel";
        case ErrorCode::malformed_record: return "MalformedRecord";
        case ErrorCode::malformed_line: return "MalformedLine";
        case ErrorCode::insufficient_pool: return "InsufficientPool";
        case ErrorCode::length_mismatch: return "LengthMismatch";
        case ErrorCode::empty_matrix: return "EmptyMatrix";
        case ErrorCode::unknown_id: return "UnknownId";
        case ErrorCode::io_failure: return "IoFailure";
    }
    return "Error";
}

}  // namespace hiss
