#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hiss/labels.hpp"

namespace hiss::protocol_text {

// Grammar anchors of the step-by-step verification format. The exact wording
// matters: the demonstration assets, the stop sequences and the parsers all
// share these strings.
inline constexpr std::string_view kConfidenceStop = "Tell me if you are confident";
inline constexpr std::string_view kConfidenceInstruction =
    "Tell me if you are confident to answer the question or not. "
    "Answer with \"yes\" or \"no\":";
inline constexpr std::string_view kNoStop = "no";
inline constexpr std::string_view kQuestionPrefix = "Question:";
inline constexpr std::string_view kAnswerPrefix = "Answer:";
inline constexpr std::string_view kSubclaimHeaderPrefix = "To verify";
inline constexpr std::string_view kFinalSentinel = "Based on the answers";
inline constexpr std::string_view kClassifiedAs = "classified as";
inline constexpr std::string_view kDecomposeMarker = "decompose the claim into";
inline constexpr std::string_view kNoSplitMarker = "will not split the claim";
inline constexpr std::string_view kNoSplitSentence =
    "A fact checker will not split the claim since the original claim is easier to verify.";

std::string decomposition_header(int subclaim_count);

/// "To verify subclaim N, a fact-checker will go through a step-by-step
/// process ..." — or the "To verify the claim, ..." form for unsplit claims.
std::string subclaim_header(int index, bool single_unsplit);

/// Header used when the step-by-step loop is ablated and background is
/// injected directly.
std::string direct_verification_header(int index, bool single_unsplit);

/// "Based on the answers to these questions, it is clear that among ..., the
/// claim is classified as" — appended when the model has not produced the
/// final line on its own.
std::string final_elicitation(const LabelScheme& scheme);

enum class MarkerKind { subclaim_header, question, final_text };

struct Marker {
    std::size_t pos = 0;
    MarkerKind kind = MarkerKind::question;
};

/// Earliest structural marker at or after `from`. "To verify" and "Among"
/// count only at line starts; "Question:" and the final sentinel also match
/// mid-line (repetition pathology emits them on one line).
std::optional<Marker> find_next_marker(std::string_view block, std::size_t from = 0);

/// Consecutive "1. ...\n2. ..." items; empty when the block has no list
/// starting at 1.
std::vector<std::string> extract_numbered_list(std::string_view block);

struct FinalParse {
    std::string label;
    std::string raw_line;
};

/// Verdict extraction: last line containing "classified as", text after the
/// final " as ", trailing punctuation stripped, longest scheme label wins.
/// Throws NoFinalLine / LabelNotInScheme.
FinalParse parse_final_label(std::string_view transcript_tail, const LabelScheme& scheme);

}  // namespace hiss::protocol_text
