#include "hiss/claim.hpp"

#include <json.hpp>

#include "hiss/errors.hpp"
#include "hiss/text.hpp"

namespace hiss {

using ordered_json = nlohmann::ordered_json;

const char* to_string(Confidence c) {
    return c == Confidence::confident ? "confident" : "not_confident";
}

std::optional<Confidence> confidence_from_string(std::string_view s) {
    if (s == "confident") return Confidence::confident;
    if (s == "not_confident") return Confidence::not_confident;
    return std::nullopt;
}

const char* to_string(SearchPolicy p) {
    switch (p) {
        case SearchPolicy::never: return "never";
        case SearchPolicy::always: return "always";
        case SearchPolicy::self_decide: return "self_decide";
    }
    return "self_decide";
}

std::optional<SearchPolicy> search_policy_from_string(std::string_view s) {
    if (s == "never") return SearchPolicy::never;
    if (s == "always") return SearchPolicy::always;
    if (s == "self_decide" || s == "self-decide") return SearchPolicy::self_decide;
    return std::nullopt;
}

std::vector<Violation> validate_trace(const VerificationTrace& trace) {
    std::vector<Violation> out;
    auto violation = [&out](std::string field, std::string rule, std::string detail = "") {
        out.push_back(Violation{std::move(field), std::move(rule), std::move(detail)});
    };

    if (text::trim(trace.claim.text).empty())
        violation("claim.text", "empty-claim-text");

    const LabelScheme* scheme = find_builtin_scheme(trace.config.scheme);
    LabelScheme custom;
    if (scheme == nullptr && trace.verdict.label.scheme == trace.config.scheme) {
        // Unknown scheme name: we can still check the verdict references it.
        custom = LabelScheme{trace.config.scheme, {trace.verdict.label.value}};
        scheme = &custom;
    }

    if (trace.subclaims.empty()) {
        violation("subclaims", "empty-subclaims");
    }
    if (!trace.config.decompose) {
        if (trace.subclaims.size() != 1) {
            violation("subclaims", "no-decompose-single-subclaim",
                      "expected exactly 1, got " + std::to_string(trace.subclaims.size()));
        } else if (trace.subclaims[0].subclaim.text != trace.claim.text) {
            violation("subclaims[0].subclaim.text", "no-decompose-text-mismatch");
        }
    }

    for (std::size_t si = 0; si < trace.subclaims.size(); ++si) {
        const auto& sv = trace.subclaims[si];
        const std::string at = "subclaims[" + std::to_string(si) + "]";
        if (sv.subclaim.index != static_cast<int>(si) + 1)
            violation(at + ".subclaim.index", "index-ordinal");
        if (text::trim(sv.subclaim.text).empty())
            violation(at + ".subclaim.text", "empty-subclaim-text");
        if (sv.steps.empty()) violation(at + ".steps", "empty-steps");

        for (std::size_t qi = 0; qi < sv.steps.size(); ++qi) {
            const auto& step = sv.steps[qi];
            const std::string sat = at + ".steps[" + std::to_string(qi) + "]";
            if (text::trim(step.question).empty()) violation(sat + ".question", "empty-question");
            if (text::trim(step.answer).empty()) violation(sat + ".answer", "empty-answer");

            switch (trace.config.search_policy) {
                case SearchPolicy::self_decide:
                    if (step.evidence && step.confidence == Confidence::confident)
                        violation(sat + ".evidence", "evidence-on-confident");
                    if (!step.evidence && step.confidence == Confidence::not_confident &&
                        step.warnings.empty())
                        violation(sat + ".evidence", "missing-evidence-on-not-confident");
                    break;
                case SearchPolicy::never:
                    if (step.evidence) violation(sat + ".evidence", "evidence-under-never");
                    break;
                case SearchPolicy::always:
                    if (!step.evidence && step.warnings.empty())
                        violation(sat + ".evidence", "missing-evidence-under-always");
                    break;
            }

            if (!step.question.empty() &&
                trace.transcript.find(step.question) == std::string::npos)
                violation(sat + ".question", "question-not-in-transcript");
            if (!step.answer.empty() && trace.transcript.find(step.answer) == std::string::npos)
                violation(sat + ".answer", "answer-not-in-transcript");
        }
    }

    if (trace.verdict.raw_line.find("classified as") == std::string::npos)
        violation("verdict.raw_line", "missing-classified-as");
    if (scheme != nullptr && !scheme->contains(trace.verdict.label.value))
        violation("verdict.label", "label-not-in-scheme", trace.verdict.label.value);
    if (trace.verdict.label.scheme != trace.config.scheme)
        violation("verdict.label.scheme", "scheme-mismatch");

    if (trace.shot_count != trace.config.shot_count)
        violation("shot_count", "shot-count-config-mismatch");

    return out;
}

namespace {

ordered_json label_to_json(const Label& label) {
    return ordered_json{{"scheme", label.scheme}, {"value", label.value}};
}

Label label_from_json(const ordered_json& j) {
    return Label{j.at("scheme").get<std::string>(), j.at("value").get<std::string>()};
}

ordered_json step_to_json(const QAStep& step) {
    ordered_json j;
    j["question"] = step.question;
    j["confidence"] = to_string(step.confidence);
    if (step.evidence) {
        j["evidence"] = ordered_json{{"text", step.evidence->text},
                                     {"source_url", step.evidence->source_url},
                                     {"query", step.evidence->query}};
    } else {
        j["evidence"] = nullptr;
    }
    j["answer"] = step.answer;
    j["warnings"] = step.warnings;
    return j;
}

QAStep step_from_json(const ordered_json& j) {
    QAStep step;
    step.question = j.at("question").get<std::string>();
    auto conf = confidence_from_string(j.at("confidence").get<std::string>());
    require(conf.has_value(), ErrorCode::malformed_line, "bad confidence value");
    step.confidence = *conf;
    if (!j.at("evidence").is_null()) {
        const auto& e = j.at("evidence");
        step.evidence = EvidenceSnippet{e.at("text").get<std::string>(),
                                        e.at("source_url").get<std::string>(),
                                        e.at("query").get<std::string>()};
    }
    step.answer = j.at("answer").get<std::string>();
    step.warnings = j.at("warnings").get<std::vector<std::string>>();
    return step;
}

}  // namespace

std::string trace_to_json_line(const VerificationTrace& trace) {
    ordered_json j;
    ordered_json claim;
    claim["id"] = trace.claim.id;
    claim["text"] = trace.claim.text;
    claim["gold"] = trace.claim.gold ? label_to_json(*trace.claim.gold) : ordered_json(nullptr);
    claim["metadata"] = trace.claim.metadata;
    j["claim"] = std::move(claim);

    ordered_json subclaims = ordered_json::array();
    for (const auto& sv : trace.subclaims) {
        ordered_json item;
        item["subclaim"] =
            ordered_json{{"index", sv.subclaim.index}, {"text", sv.subclaim.text}};
        ordered_json steps = ordered_json::array();
        for (const auto& step : sv.steps) steps.push_back(step_to_json(step));
        item["steps"] = std::move(steps);
        subclaims.push_back(std::move(item));
    }
    j["subclaims"] = std::move(subclaims);

    j["verdict"] = ordered_json{{"label", label_to_json(trace.verdict.label)},
                                {"raw_line", trace.verdict.raw_line}};
    j["transcript"] = trace.transcript;
    j["config"] = ordered_json{
        {"scheme", trace.config.scheme},
        {"shot_count", trace.config.shot_count},
        {"search_policy", to_string(trace.config.search_policy)},
        {"decompose", trace.config.decompose},
        {"step_by_step", trace.config.step_by_step},
        {"max_subclaims", trace.config.max_subclaims},
        {"max_questions_per_subclaim", trace.config.max_questions_per_subclaim},
        {"prompt_asset", trace.config.prompt_asset},
    };
    j["config_fingerprint"] = trace.config_fingerprint;
    j["shot_count"] = trace.shot_count;
    j["warnings"] = trace.warnings;
    return j.dump();
}

VerificationTrace trace_from_json_line(const std::string& line) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::malformed_line, std::string("trace json: ") + e.what());
    }
    try {
        VerificationTrace trace;
        const auto& c = j.at("claim");
        trace.claim.id = c.at("id").get<std::string>();
        trace.claim.text = c.at("text").get<std::string>();
        if (!c.at("gold").is_null()) trace.claim.gold = label_from_json(c.at("gold"));
        trace.claim.metadata = c.at("metadata").get<std::map<std::string, std::string>>();

        for (const auto& item : j.at("subclaims")) {
            SubclaimVerification sv;
            sv.subclaim.index = item.at("subclaim").at("index").get<int>();
            sv.subclaim.text = item.at("subclaim").at("text").get<std::string>();
            for (const auto& s : item.at("steps")) sv.steps.push_back(step_from_json(s));
            trace.subclaims.push_back(std::move(sv));
        }

        trace.verdict.label = label_from_json(j.at("verdict").at("label"));
        trace.verdict.raw_line = j.at("verdict").at("raw_line").get<std::string>();
        trace.transcript = j.at("transcript").get<std::string>();

        const auto& cfg = j.at("config");
        trace.config.scheme = cfg.at("scheme").get<std::string>();
        trace.config.shot_count = cfg.at("shot_count").get<int>();
        auto policy = search_policy_from_string(cfg.at("search_policy").get<std::string>());
        require(policy.has_value(), ErrorCode::malformed_line, "bad search_policy");
        trace.config.search_policy = *policy;
        trace.config.decompose = cfg.at("decompose").get<bool>();
        trace.config.step_by_step = cfg.at("step_by_step").get<bool>();
        trace.config.max_subclaims = cfg.at("max_subclaims").get<int>();
        trace.config.max_questions_per_subclaim =
            cfg.at("max_questions_per_subclaim").get<int>();
        trace.config.prompt_asset = cfg.at("prompt_asset").get<std::string>();

        trace.config_fingerprint = j.at("config_fingerprint").get<std::string>();
        trace.shot_count = j.at("shot_count").get<int>();
        trace.warnings = j.at("warnings").get<std::vector<std::string>>();
        return trace;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::malformed_line, std::string("trace json: ") + e.what());
    }
}

}  // namespace hiss
