#include "hiss/baselines.hpp"

#include <json.hpp>

#include "hiss/errors.hpp"
#include "hiss/protocol_text.hpp"
#include "hiss/text.hpp"

namespace hiss {

const char* to_string(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::standard: return "standard";
        case BaselineKind::vanilla_cot: return "vanilla_cot";
        case BaselineKind::search_cot: return "search_cot";
    }
    return "standard";
}

std::string standard_prompt(const DemoSet& demos, const Claim& claim,
                            const LabelScheme& scheme, int shot_count) {
    require(!text::trim(claim.text).empty(), ErrorCode::precondition, "claim text is empty");
    std::string joined = join_demos(demos, shot_count);
    std::string prompt = joined.empty() ? "" : joined + "\n\n";
    prompt += "Q: Among " + label_set_sentence(scheme) + ", the claim \"" + claim.text +
              "\" is classified as\nA: ";
    return prompt;
}

std::string cot_prompt(const DemoSet& demos, const Claim& claim, const LabelScheme& scheme,
                       int shot_count, const std::optional<EvidenceSnippet>& background) {
    require(!text::trim(claim.text).empty(), ErrorCode::precondition, "claim text is empty");
    std::string joined = join_demos(demos, shot_count);
    std::string prompt = joined.empty() ? "" : joined + "\n\n";
    if (background) prompt += "Background: " + background->text + "\n";
    prompt += "Q: Choose a label from " + label_set_sentence(scheme) +
              " for the following claim.\nClaim: \"" + claim.text + "\"\nA: ";
    return prompt;
}

namespace {

BaselineResult finish_cot(const std::string& prompt, const std::string& completion,
                          const LabelScheme& scheme) {
    auto parsed = protocol_text::parse_final_label(completion, scheme);

    std::string chain;
    std::size_t thus = completion.rfind("Thus the claim is classified as");
    if (thus != std::string::npos) {
        chain = std::string(text::trim(std::string_view(completion).substr(0, thus)));
    } else if (std::size_t line = completion.rfind(parsed.raw_line);
               line != std::string::npos) {
        chain = std::string(text::trim(std::string_view(completion).substr(0, line)));
    }

    BaselineResult result;
    result.verdict = Verdict{make_label(scheme, parsed.label), parsed.raw_line};
    result.chain_text = std::move(chain);
    result.prompt = prompt;
    result.completion = completion;
    return result;
}

}  // namespace

BaselineResult run_standard(const Claim& claim, const LabelScheme& scheme, Backend& backend,
                            const DemoSet& demos, int shot_count) {
    std::string prompt = standard_prompt(demos, claim, scheme, shot_count);
    CompletionRequest request{prompt, 0.0, 64, {"\n", "Q:"}};
    auto response = backend.complete(request);

    std::string_view first_line = response.text;
    if (std::size_t nl = first_line.find('\n'); nl != std::string_view::npos)
        first_line = first_line.substr(0, nl);
    std::string_view tail = text::strip_trailing_punct(text::trim(first_line));
    auto label = longest_label_match(tail, scheme);
    require(label.has_value(), ErrorCode::label_not_in_scheme,
            "no scheme label in '" + std::string(tail) + "'");

    BaselineResult result;
    result.verdict = Verdict{make_label(scheme, *label),
                             "classified as " + std::string(text::trim(first_line))};
    result.prompt = std::move(prompt);
    result.completion = response.text;
    return result;
}

BaselineResult run_vanilla_cot(const Claim& claim, const LabelScheme& scheme,
                               Backend& backend, const DemoSet& demos, int shot_count) {
    std::string prompt = cot_prompt(demos, claim, scheme, shot_count, std::nullopt);
    CompletionRequest request{prompt, 0.0, 512, {"\n\nQ:"}};
    auto response = backend.complete(request);
    return finish_cot(prompt, response.text, scheme);
}

BaselineResult run_search_cot(const Claim& claim, const LabelScheme& scheme, Backend& backend,
                              const DemoSet& demos, SearchCache& cache, SearchEngine* engine,
                              int shot_count, const FilterConfig& filter) {
    auto hits = search(claim.text, cache, engine);
    auto filtered = filter_fact_check(std::move(hits), filter);
    auto background = select_top_snippet(filtered, claim.text);

    std::string prompt = cot_prompt(demos, claim, scheme, shot_count, background);
    CompletionRequest request{prompt, 0.0, 512, {"\n\nQ:"}};
    auto response = backend.complete(request);

    BaselineResult result = finish_cot(prompt, response.text, scheme);
    result.background = background;
    result.background_missing = !background.has_value();
    return result;
}

std::string baseline_result_line(const Claim& claim, std::string_view method,
                                 const BaselineResult& result) {
    nlohmann::ordered_json j;
    j["id"] = claim.id;
    j["method"] = std::string(method);
    j["label"] = result.verdict.label.value;
    j["raw_line"] = result.verdict.raw_line;
    j["chain_text"] = result.chain_text;
    j["background_missing"] = result.background_missing;
    j["completion"] = result.completion;
    return j.dump();
}

}  // namespace hiss
