#pragma once

#include <optional>
#include <string>

#include "hiss/backend.hpp"
#include "hiss/claim.hpp"
#include "hiss/labels.hpp"
#include "hiss/prompt_assets.hpp"
#include "hiss/search.hpp"

namespace hiss {

enum class BaselineKind { standard, vanilla_cot, search_cot };

const char* to_string(BaselineKind kind);

struct BaselineResult {
    Verdict verdict;
    std::string chain_text;  // empty for standard prompting
    std::string prompt;
    std::string completion;
    std::optional<EvidenceSnippet> background;  // search_cot only
    bool background_missing = false;            // search_cot: filter left nothing
};

std::string standard_prompt(const DemoSet& demos, const Claim& claim,
                            const LabelScheme& scheme, int shot_count);
std::string cot_prompt(const DemoSet& demos, const Claim& claim, const LabelScheme& scheme,
                       int shot_count, const std::optional<EvidenceSnippet>& background);

/// One completion; the label is read from the first line with the shared
/// longest-match rule.
BaselineResult run_standard(const Claim& claim, const LabelScheme& scheme, Backend& backend,
                            const DemoSet& demos, int shot_count = 4);

/// Thought chain then "Thus the claim is classified as <label>".
BaselineResult run_vanilla_cot(const Claim& claim, const LabelScheme& scheme,
                               Backend& backend, const DemoSet& demos, int shot_count = 4);

/// Vanilla CoT with the claim text (verbatim) as search query; the filtered
/// top snippet is prepended as background. Zero surviving hits proceed
/// without background, flagged.
BaselineResult run_search_cot(const Claim& claim, const LabelScheme& scheme, Backend& backend,
                              const DemoSet& demos, SearchCache& cache, SearchEngine* engine,
                              int shot_count = 4, const FilterConfig& filter = {});

/// One-line JSON record of a baseline run, the baseline counterpart of the
/// trace line.
std::string baseline_result_line(const Claim& claim, std::string_view method,
                                 const BaselineResult& result);

}  // namespace hiss
