#include "hiss/transcript.hpp"

#include "hiss/errors.hpp"
#include "hiss/protocol_text.hpp"
#include "hiss/text.hpp"

namespace hiss {

namespace pt = protocol_text;

std::string render_answer_block(const VerificationTrace& trace) {
    std::string out;
    bool single_unsplit =
        trace.subclaims.size() == 1 && trace.subclaims[0].subclaim.text == trace.claim.text;

    if (single_unsplit) {
        out += std::string(pt::kNoSplitSentence) + "\n";
    } else {
        out += pt::decomposition_header(static_cast<int>(trace.subclaims.size())) + "\n";
        for (const auto& sv : trace.subclaims) {
            out += std::to_string(sv.subclaim.index) + ". " + sv.subclaim.text + "\n";
        }
    }

    for (const auto& sv : trace.subclaims) {
        out += pt::subclaim_header(sv.subclaim.index, single_unsplit) + "\n";
        for (const auto& step : sv.steps) {
            out += std::string(pt::kQuestionPrefix) + " " + step.question + " ";
            out += std::string(pt::kConfidenceInstruction);
            out += step.confidence == Confidence::confident ? " Yes.\n" : " No.\n";
            out += std::string(pt::kAnswerPrefix) + " " + step.answer + "\n";
        }
    }

    const LabelScheme* scheme = find_builtin_scheme(trace.config.scheme);
    std::string sentence = scheme != nullptr ? label_set_sentence(*scheme)
                                             : trace.verdict.label.value;
    out += "Based on the answers to these questions, it is clear that among " + sentence +
           ", the claim is classified as " + trace.verdict.label.value + ".";
    return out;
}

namespace {

// The answer runs until the next Question:/To verify/final marker.
std::size_t answer_end(const std::string& block, std::size_t from) {
    auto marker = pt::find_next_marker(block, from);
    return marker ? marker->pos : block.size();
}

}  // namespace

ParsedTranscript parse_answer_block(const std::string& block, const LabelScheme& scheme) {
    ParsedTranscript out;

    auto first_marker = pt::find_next_marker(block);
    std::size_t head_end = first_marker ? first_marker->pos : block.size();
    std::string_view head = std::string_view(block).substr(0, head_end);

    std::vector<Subclaim> subclaims;
    if (text::icontains(head, pt::kNoSplitMarker)) {
        out.split = false;
    } else {
        auto items = pt::extract_numbered_list(head);
        require(!items.empty(), ErrorCode::unparseable_decomposition,
                "transcript head has neither a list nor the no-split sentence");
        for (std::size_t i = 0; i < items.size(); ++i)
            subclaims.push_back(Subclaim{static_cast<int>(i) + 1, items[i]});
    }

    std::size_t cursor = head_end;
    int section = -1;  // index into out.subclaims
    for (;;) {
        auto marker = pt::find_next_marker(block, cursor);
        if (!marker) break;
        if (marker->kind == pt::MarkerKind::final_text) {
            cursor = marker->pos;
            break;
        }
        if (marker->kind == pt::MarkerKind::subclaim_header) {
            section += 1;
            SubclaimVerification sv;
            if (out.split) {
                require(section < static_cast<int>(subclaims.size()),
                        ErrorCode::malformed_line,
                        "more verification sections than listed subclaims");
                sv.subclaim = subclaims[static_cast<std::size_t>(section)];
            } else {
                sv.subclaim = Subclaim{1, ""};  // text filled by caller comparison
            }
            out.subclaims.push_back(std::move(sv));
            cursor = marker->pos + pt::kSubclaimHeaderPrefix.size();
            continue;
        }

        // Question.
        require(section >= 0, ErrorCode::malformed_line,
                "question before any verification section");
        std::size_t q_start = marker->pos + pt::kQuestionPrefix.size();
        std::size_t probe = text::ifind(block, pt::kConfidenceStop, q_start);
        require(probe != std::string_view::npos, ErrorCode::malformed_line,
                "question without confidence probe");
        QAStep step;
        step.question = std::string(text::trim(
            std::string_view(block).substr(q_start, probe - q_start)));

        // The yes/no token follows the instruction's colon.
        std::size_t line_end = block.find('\n', probe);
        if (line_end == std::string::npos) line_end = block.size();
        std::size_t colon = block.rfind(':', line_end);
        require(colon != std::string::npos && colon > probe, ErrorCode::malformed_line,
                "confidence line without token");
        std::string_view token =
            text::trim(std::string_view(block).substr(colon + 1, line_end - colon - 1));
        step.confidence = text::icontains(token, "yes") ? Confidence::confident
                                                        : Confidence::not_confident;

        std::size_t ans = block.find(pt::kAnswerPrefix, line_end);
        require(ans != std::string::npos, ErrorCode::malformed_line, "step without answer");
        std::size_t ans_start = ans + pt::kAnswerPrefix.size();
        std::size_t ans_stop = answer_end(block, ans_start);
        step.answer = std::string(
            text::trim(std::string_view(block).substr(ans_start, ans_stop - ans_start)));

        out.subclaims[static_cast<std::size_t>(section)].steps.push_back(std::move(step));
        cursor = ans_stop;
    }

    auto final_parse =
        pt::parse_final_label(std::string_view(block).substr(cursor), scheme);
    out.verdict_label = final_parse.label;
    out.raw_line = final_parse.raw_line;
    return out;
}

bool structurally_equal(const VerificationTrace& trace, const ParsedTranscript& parsed) {
    if (trace.subclaims.size() != parsed.subclaims.size()) return false;
    for (std::size_t i = 0; i < trace.subclaims.size(); ++i) {
        const auto& a = trace.subclaims[i];
        const auto& b = parsed.subclaims[i];
        if (parsed.split && a.subclaim.text != b.subclaim.text) return false;
        if (a.steps.size() != b.steps.size()) return false;
        for (std::size_t j = 0; j < a.steps.size(); ++j) {
            if (a.steps[j].question != b.steps[j].question) return false;
            if (a.steps[j].confidence != b.steps[j].confidence) return false;
            if (a.steps[j].answer != b.steps[j].answer) return false;
        }
    }
    return trace.verdict.label.value == parsed.verdict_label;
}

}  // namespace hiss
