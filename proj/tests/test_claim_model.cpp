#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hiss/claim.hpp"
#include "hiss/errors.hpp"

using namespace hiss;

namespace {

VerificationTrace small_valid_trace() {
    VerificationTrace trace;
    trace.claim = Claim{"t1", "The mill reopened last spring.", std::nullopt, {}};
    trace.config.scheme = "rawfc";
    trace.config.shot_count = 4;
    trace.shot_count = 4;
    trace.config_fingerprint = "deadbeefdeadbeef";

    QAStep confident;
    confident.question = "When did the mill reopen?";
    confident.confidence = Confidence::confident;
    confident.answer = "Local records list an April reopening.";

    QAStep searched;
    searched.question = "Is the mill running at full capacity?";
    searched.confidence = Confidence::not_confident;
    searched.evidence = EvidenceSnippet{"The mill runs two of its three lines.",
                                        "https://records.example.gov/mill",
                                        "Is the mill running at full capacity?"};
    searched.answer = "The mill runs two of its three lines.";

    trace.subclaims.push_back(
        SubclaimVerification{Subclaim{1, "The mill reopened."}, {confident, searched}});
    trace.verdict = Verdict{Label{"rawfc", "half"}, "the claim is classified as half."};
    trace.transcript =
        "Q: Claim: \"The mill reopened last spring.\"\nA: ...\n"
        "Question: When did the mill reopen? ... Answer: Local records list an April "
        "reopening.\nQuestion: Is the mill running at full capacity? ... Answer: The mill "
        "runs two of its three lines.\nthe claim is classified as half.";
    return trace;
}

}  // namespace

TEST_CASE("a coherent trace validates clean") {
    CHECK(validate_trace(small_valid_trace()).empty());
}

TEST_CASE("evidence on a confident step is a violation under self-decide") {
    auto trace = small_valid_trace();
    trace.subclaims[0].steps[0].evidence =
        EvidenceSnippet{"stray", "https://records.example.gov/x", "q"};
    auto violations = validate_trace(trace);
    REQUIRE(!violations.empty());
    bool found = false;
    for (const auto& v : violations) found = found || v.rule == "evidence-on-confident";
    CHECK(found);
}

TEST_CASE("zero subclaims with decomposition enabled is flagged") {
    auto trace = small_valid_trace();
    trace.subclaims.clear();
    auto violations = validate_trace(trace);
    bool found = false;
    for (const auto& v : violations) found = found || v.rule == "empty-subclaims";
    CHECK(found);
}

TEST_CASE("no-decompose traces must carry exactly the claim") {
    auto trace = small_valid_trace();
    trace.config.decompose = false;
    auto violations = validate_trace(trace);
    bool found = false;
    for (const auto& v : violations) found = found || v.rule == "no-decompose-text-mismatch";
    CHECK(found);

    trace.subclaims[0].subclaim.text = trace.claim.text;
    CHECK(validate_trace(trace).empty());
}

TEST_CASE("questions and answers must appear verbatim in the transcript") {
    auto trace = small_valid_trace();
    trace.subclaims[0].steps[1].answer = "Changed answer that is nowhere in the transcript.";
    auto violations = validate_trace(trace);
    bool found = false;
    for (const auto& v : violations) found = found || v.rule == "answer-not-in-transcript";
    CHECK(found);
}

TEST_CASE("policy never forbids evidence; always demands it or a flag") {
    auto trace = small_valid_trace();
    trace.config.search_policy = SearchPolicy::never;
    auto violations = validate_trace(trace);
    bool found = false;
    for (const auto& v : violations) found = found || v.rule == "evidence-under-never";
    CHECK(found);

    auto always = small_valid_trace();
    always.config.search_policy = SearchPolicy::always;
    violations = validate_trace(always);
    found = false;
    for (const auto& v : violations) found = found || v.rule == "missing-evidence-under-always";
    CHECK(found);  // the confident step has neither evidence nor a warning

    always.subclaims[0].steps[0].warnings.push_back("no-evidence");
    CHECK(validate_trace(always).empty());
}

TEST_CASE("shot count must match the configuration") {
    auto trace = small_valid_trace();
    trace.shot_count = 2;
    auto violations = validate_trace(trace);
    bool found = false;
    for (const auto& v : violations) found = found || v.rule == "shot-count-config-mismatch";
    CHECK(found);
}

TEST_CASE("trace json round-trips exactly") {
    auto trace = small_valid_trace();
    trace.warnings.push_back("question-cap-exceeded:subclaim-1");
    trace.claim.metadata["speaker"] = "someone";
    trace.claim.gold = Label{"rawfc", "half"};

    auto line = trace_to_json_line(trace);
    auto back = trace_from_json_line(line);
    CHECK(back == trace);
    CHECK(trace_to_json_line(back) == line);
}

TEST_CASE("malformed trace json reports MalformedLine") {
    CHECK_THROWS_AS(trace_from_json_line("{\"claim\": 3"), Error);
    try {
        trace_from_json_line("{}");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::malformed_line);
    }
}
