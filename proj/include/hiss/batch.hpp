#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hiss/backend.hpp"
#include "hiss/claim.hpp"
#include "hiss/datasets.hpp"
#include "hiss/protocol.hpp"
#include "hiss/search.hpp"

namespace hiss {

enum class Method { hiss, standard, vanilla_cot, search_cot };

const char* to_string(Method method);
std::optional<Method> method_from_string(std::string_view s);

struct BatchOptions {
    int jobs = 1;
    bool resume = false;
    std::filesystem::path traces_path;
    std::filesystem::path predictions_path;
};

struct BatchSummary {
    long completed = 0;
    long failed = 0;
    long skipped = 0;
    RunStats stats;
};

/// Runs every claim through `method`, streaming one result line per claim to
/// the traces file and one "id<TAB>label" line (label `abstain` on failure)
/// to the predictions file, both in input order regardless of `jobs`.
/// Per-claim errors are logged and the run continues.
BatchSummary run_batch(const std::vector<Claim>& claims, Method method,
                       const RunConfig& config, const DemoSet& demos, Backend& backend,
                       SearchCache& cache, SearchEngine* engine, const BatchOptions& options,
                       std::ostream* log);

/// Predictions-file reader: id -> label value, `abstain` mapped to nullopt.
std::vector<std::pair<std::string, std::optional<std::string>>> read_predictions(
    const std::filesystem::path& path);

inline constexpr std::string_view kAbstainToken = "abstain";

}  // namespace hiss
