#pragma once

#include <string>

#include "hiss/claim.hpp"
#include "hiss/labels.hpp"

namespace hiss {

/// Canonical text form of a completed verification: the content of the
/// final "A:" block, without the demonstrations.
std::string render_answer_block(const VerificationTrace& trace);

struct ParsedTranscript {
    bool split = true;  // false when the no-split sentence was used
    std::vector<SubclaimVerification> subclaims;
    std::string verdict_label;
    std::string raw_line;
};

/// Recovers the structure from a rendered answer block. Evidence objects are
/// not recoverable from text; steps come back with question, confidence and
/// answer only.
ParsedTranscript parse_answer_block(const std::string& block, const LabelScheme& scheme);

/// Structural equality between a live trace and a re-parsed transcript:
/// subclaim texts, per-step question/confidence/answer, and verdict label.
bool structurally_equal(const VerificationTrace& trace, const ParsedTranscript& parsed);

}  // namespace hiss
