#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hiss/evidence.hpp"
#include "hiss/labels.hpp"

namespace hiss {

struct Claim {
    std::string id;
    std::string text;
    std::optional<Label> gold;
    std::map<std::string, std::string> metadata;

    bool operator==(const Claim&) const = default;
};

struct Subclaim {
    int index = 1;  // 1-based
    std::string text;

    bool operator==(const Subclaim&) const = default;
};

enum class Confidence { confident, not_confident };

const char* to_string(Confidence c);
std::optional<Confidence> confidence_from_string(std::string_view s);

/// One probing question with its confidence decision, optional evidence and
/// answer. Warnings record protocol irregularities (ambiguous confidence
/// reply, no search results under an always-search run, ...).
struct QAStep {
    std::string question;
    Confidence confidence = Confidence::confident;
    std::optional<EvidenceSnippet> evidence;
    std::string answer;
    std::vector<std::string> warnings;

    bool operator==(const QAStep&) const = default;
};

struct SubclaimVerification {
    Subclaim subclaim;
    std::vector<QAStep> steps;

    bool operator==(const SubclaimVerification&) const = default;
};

struct Verdict {
    Label label;
    std::string raw_line;

    bool operator==(const Verdict&) const = default;
};

enum class SearchPolicy { never, always, self_decide };

const char* to_string(SearchPolicy p);
std::optional<SearchPolicy> search_policy_from_string(std::string_view s);

/// The run-configuration summary embedded in every trace so traces remain
/// self-describing without the original command line.
struct TraceConfig {
    std::string scheme;
    int shot_count = 4;
    SearchPolicy search_policy = SearchPolicy::self_decide;
    bool decompose = true;
    bool step_by_step = true;
    int max_subclaims = 6;
    int max_questions_per_subclaim = 6;
    std::string prompt_asset;

    bool operator==(const TraceConfig&) const = default;
};

struct VerificationTrace {
    Claim claim;
    std::vector<SubclaimVerification> subclaims;
    Verdict verdict;
    std::string transcript;  // full raw prompt + generations
    TraceConfig config;
    std::string config_fingerprint;
    int shot_count = 4;
    std::vector<std::string> warnings;

    bool operator==(const VerificationTrace&) const = default;
};

/// A broken invariant, reported as data rather than an error.
struct Violation {
    std::string field;
    std::string rule;
    std::string detail;

    bool operator==(const Violation&) const = default;
};

/// Checks every structural invariant of a trace; empty result means valid.
std::vector<Violation> validate_trace(const VerificationTrace& trace);

std::string trace_to_json_line(const VerificationTrace& trace);
VerificationTrace trace_from_json_line(const std::string& line);

}  // namespace hiss
