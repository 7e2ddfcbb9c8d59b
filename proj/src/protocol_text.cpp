#include "hiss/protocol_text.hpp"

#include "hiss/errors.hpp"
#include "hiss/text.hpp"

namespace hiss::protocol_text {

std::string decomposition_header(int subclaim_count) {
    return "A fact checker will decompose the claim into " + std::to_string(subclaim_count) +
           " subclaims that are easier to verify:";
}

std::string subclaim_header(int index, bool single_unsplit) {
    std::string subject =
        single_unsplit ? std::string("the claim") : "subclaim " + std::to_string(index);
    return "To verify " + subject +
           ", a fact-checker will go through a step-by-step process to ask and answer a "
           "series of questions relevant to its factuality. Here are the specific steps "
           "he/she raise each question and look for an answer:";
}

std::string direct_verification_header(int index, bool single_unsplit) {
    std::string subject =
        single_unsplit ? std::string("the claim") : "subclaim " + std::to_string(index);
    return "To verify " + subject +
           ", a fact-checker will consider the following background information:";
}

std::string final_elicitation(const LabelScheme& scheme) {
    return "Based on the answers to these questions, it is clear that among " +
           label_set_sentence(scheme) + ", the claim is classified as";
}

namespace {

bool at_line_start(std::string_view block, std::size_t pos) {
    while (pos > 0) {
        char c = block[pos - 1];
        if (c == '\n') return true;
        if (c == ' ' || c == '\t' || c == '\r') {
            --pos;
            continue;
        }
        return false;
    }
    return true;
}

}  // namespace

std::optional<Marker> find_next_marker(std::string_view block, std::size_t from) {
    std::optional<Marker> best;
    auto consider = [&](std::size_t pos, MarkerKind kind) {
        if (pos == std::string_view::npos) return;
        if (!best || pos < best->pos) best = Marker{pos, kind};
    };

    // Line-start markers.
    for (std::size_t pos = block.find(kSubclaimHeaderPrefix, from);
         pos != std::string_view::npos; pos = block.find(kSubclaimHeaderPrefix, pos + 1)) {
        if (at_line_start(block, pos)) {
            consider(pos, MarkerKind::subclaim_header);
            break;
        }
    }
    for (std::size_t pos = block.find("Among ", from); pos != std::string_view::npos;
         pos = block.find("Among ", pos + 1)) {
        if (at_line_start(block, pos)) {
            consider(pos, MarkerKind::final_text);
            break;
        }
    }

    // Anywhere markers.
    consider(block.find(kQuestionPrefix, from), MarkerKind::question);
    consider(block.find(kFinalSentinel, from), MarkerKind::final_text);

    return best;
}

std::vector<std::string> extract_numbered_list(std::string_view block) {
    std::vector<std::string> items;
    int expected = 1;
    for (std::string_view line : text::split_lines(block)) {
        std::string_view t = text::trim(line);
        std::size_t d = 0;
        while (d < t.size() && t[d] >= '0' && t[d] <= '9') ++d;
        if (d == 0 || d >= t.size() || t[d] != '.') {
            if (!items.empty()) break;  // list ended
            continue;
        }
        int number = 0;
        for (std::size_t i = 0; i < d; ++i) number = number * 10 + (t[i] - '0');
        if (number != expected) {
            if (!items.empty()) break;
            continue;
        }
        std::string_view item = text::trim(t.substr(d + 1));
        if (item.empty()) break;
        items.emplace_back(item);
        ++expected;
    }
    return items;
}

FinalParse parse_final_label(std::string_view transcript_tail, const LabelScheme& scheme) {
    std::string_view last_line;
    bool found = false;
    for (std::string_view line : text::split_lines(transcript_tail)) {
        if (text::icontains(line, kClassifiedAs)) {
            last_line = line;
            found = true;
        }
    }
    require(found, ErrorCode::no_final_line, "no line containing 'classified as'");

    // Tail after the final " as " on that line.
    std::size_t as_pos = std::string_view::npos;
    for (std::size_t pos = text::ifind(last_line, " as "); pos != std::string_view::npos;
         pos = text::ifind(last_line, " as ", pos + 1)) {
        as_pos = pos;
    }
    require(as_pos != std::string_view::npos, ErrorCode::no_final_line,
            "final line carries no ' as ' anchor");
    std::string_view tail = text::strip_trailing_punct(last_line.substr(as_pos + 4));

    auto label = longest_label_match(tail, scheme);
    require(label.has_value(), ErrorCode::label_not_in_scheme,
            "no scheme label in final tail '" + std::string(tail) + "'");
    return FinalParse{*label, std::string(text::trim(last_line))};
}

}  // namespace hiss::protocol_text
