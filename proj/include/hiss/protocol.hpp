#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hiss/backend.hpp"
#include "hiss/claim.hpp"
#include "hiss/labels.hpp"
#include "hiss/prompt_assets.hpp"
#include "hiss/search.hpp"

namespace hiss {

struct RunConfig {
    LabelScheme scheme;
    int shot_count = 4;
    SearchPolicy search_policy = SearchPolicy::self_decide;
    bool decompose = true;
    bool step_by_step = true;
    int max_subclaims = 6;
    int max_questions_per_subclaim = 6;
    std::string prompt_asset;  // filled from the demo set when left empty
    FilterConfig filter;
    int max_tokens = 512;
    RetryPolicy retry;

    void validate() const;
    TraceConfig trace_config() const;
};

enum class Phase { decomposition, subclaim_loop, final_prediction };

/// Evolving prompt state of one verification. `prompt` only ever grows;
/// `pending` is generated text not yet consumed by the structural scanner.
struct ProtocolState {
    std::string prompt;
    Phase phase = Phase::decomposition;
    std::optional<int> current_subclaim;
    int question_count = 0;
    std::string pending;
};

/// K demonstrations in asset order plus the claim block suffix.
ProtocolState assemble_prompt(const DemoSet& demos, const Claim& claim,
                              const RunConfig& config);

struct ConfidenceDetection {
    Confidence confidence = Confidence::confident;
    bool ambiguous = false;
};

/// Reads the reply to the confidence probe: a "no" stop hit means not
/// confident; an affirmative before the first newline means confident;
/// anything else counts as confident with the ambiguity flagged.
ConfidenceDetection detect_confidence(const CompletionResponse& response);

/// Drives one claim through the protocol. The phase methods are exposed
/// individually so each is testable; `run` composes them, honoring the
/// decomposition / step-by-step / search-policy switches.
class HissSession {
public:
    HissSession(Claim claim, RunConfig config, const DemoSet& demos, Backend& backend,
                SearchCache& cache, SearchEngine* engine);

    std::vector<Subclaim> run_decomposition();
    SubclaimVerification run_subclaim_loop(const Subclaim& subclaim);
    Verdict run_final_prediction();

    VerificationTrace run();

    const ProtocolState& state() const { return state_; }

private:
    CompletionResponse generate(std::vector<std::string> stops);
    void append(std::string_view chunk);
    void ensure_line_start();
    void append_instruction();
    QAStep ask_and_answer(const std::string& question);
    void answer_unaided(QAStep& step);
    std::optional<EvidenceSnippet> acquire_evidence(const std::string& question);
    SubclaimVerification direct_verify(const Subclaim& subclaim);
    void discard_pending_to_boundary();
    std::string fingerprint_string() const;

    Claim claim_;
    RunConfig config_;
    const DemoSet& demos_;
    Backend& backend_;
    SearchCache& cache_;
    SearchEngine* engine_;
    ProtocolState state_;
    std::vector<std::string> warnings_;
    bool single_unsplit_ = false;
};

VerificationTrace run_hiss(const Claim& claim, const RunConfig& config, const DemoSet& demos,
                           Backend& backend, SearchCache& cache, SearchEngine* engine);

struct RunStats {
    long questions = 0;
    long confident = 0;
    long searched = 0;
};

RunStats stats_from_trace(const VerificationTrace& trace);

}  // namespace hiss
