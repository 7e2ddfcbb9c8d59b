#include "hiss/protocol.hpp"

#include <algorithm>

#include "hiss/errors.hpp"
#include "hiss/fingerprint.hpp"
#include "hiss/protocol_text.hpp"
#include "hiss/text.hpp"

namespace hiss {

namespace pt = protocol_text;

void RunConfig::validate() const {
    require(!scheme.labels.empty(), ErrorCode::empty_scheme, "run config needs a scheme");
    require(shot_count >= 0, ErrorCode::precondition, "shot count must be >= 0");
    require(max_subclaims >= 1, ErrorCode::precondition, "max_subclaims must be >= 1");
    require(max_questions_per_subclaim >= 1, ErrorCode::precondition,
            "max_questions_per_subclaim must be >= 1");
    require(max_tokens > 0, ErrorCode::precondition, "max_tokens must be positive");
}

TraceConfig RunConfig::trace_config() const {
    TraceConfig tc;
    tc.scheme = scheme.name;
    tc.shot_count = shot_count;
    tc.search_policy = search_policy;
    tc.decompose = decompose;
    tc.step_by_step = step_by_step;
    tc.max_subclaims = max_subclaims;
    tc.max_questions_per_subclaim = max_questions_per_subclaim;
    tc.prompt_asset = prompt_asset;
    return tc;
}

ProtocolState assemble_prompt(const DemoSet& demos, const Claim& claim,
                              const RunConfig& config) {
    config.validate();
    require(!text::trim(claim.text).empty(), ErrorCode::precondition, "claim text is empty");
    ProtocolState state;
    std::string joined = join_demos(demos, config.shot_count);
    if (!joined.empty()) state.prompt = joined + "\n\n";
    state.prompt += "Q: Claim: \"" + claim.text + "\"\nA: ";
    return state;
}

ConfidenceDetection detect_confidence(const CompletionResponse& response) {
    if (response.finish_reason == FinishReason::stop_sequence_hit &&
        response.matched_stop.has_value() &&
        text::iequals(*response.matched_stop, pt::kNoStop)) {
        return {Confidence::not_confident, false};
    }
    std::string_view first_line = response.text;
    if (std::size_t nl = first_line.find('\n'); nl != std::string_view::npos)
        first_line = first_line.substr(0, nl);
    if (text::icontains(first_line, "yes")) return {Confidence::confident, false};
    return {Confidence::confident, true};
}

namespace {

// head = text before the first structural marker, rest = from the marker on.
std::pair<std::string, std::string> split_at_marker(std::string_view chunk) {
    auto marker = pt::find_next_marker(chunk);
    if (!marker) return {std::string(chunk), std::string{}};
    return {std::string(chunk.substr(0, marker->pos)), std::string(chunk.substr(marker->pos))};
}

}  // namespace

HissSession::HissSession(Claim claim, RunConfig config, const DemoSet& demos,
                         Backend& backend, SearchCache& cache, SearchEngine* engine)
    : claim_(std::move(claim)),
      config_(std::move(config)),
      demos_(demos),
      backend_(backend),
      cache_(cache),
      engine_(engine) {
    if (config_.prompt_asset.empty()) config_.prompt_asset = demos_.asset_id();
}

CompletionResponse HissSession::generate(std::vector<std::string> stops) {
    CompletionRequest request;
    request.prompt = state_.prompt;
    request.temperature = 0.0;
    request.max_tokens = config_.max_tokens;
    request.stop_sequences = std::move(stops);
    return with_retry(backend_, request, config_.retry);
}

void HissSession::append(std::string_view chunk) { state_.prompt += chunk; }

void HissSession::ensure_line_start() {
    if (!state_.prompt.empty() && state_.prompt.back() != '\n') state_.prompt += '\n';
}

void HissSession::append_instruction() {
    // The probe is appended during the model's pause; a single space separates
    // it from the question unless the generation already left whitespace.
    if (!state_.prompt.empty()) {
        char last = state_.prompt.back();
        if (last != ' ' && last != '\n' && last != '\t') state_.prompt += ' ';
    }
    state_.prompt += pt::kConfidenceInstruction;
}

std::string HissSession::fingerprint_string() const {
    std::string s;
    s += "scheme=" + config_.scheme.name;
    s += ";k=" + std::to_string(config_.shot_count);
    s += ";policy=" + std::string(to_string(config_.search_policy));
    s += ";decompose=" + std::to_string(config_.decompose ? 1 : 0);
    s += ";stepwise=" + std::to_string(config_.step_by_step ? 1 : 0);
    s += ";max_subclaims=" + std::to_string(config_.max_subclaims);
    s += ";max_questions=" + std::to_string(config_.max_questions_per_subclaim);
    s += ";backend=" + backend_.id();
    s += ";asset=" + config_.prompt_asset;
    return s;
}

std::vector<Subclaim> HissSession::run_decomposition() {
    state_.phase = Phase::decomposition;
    std::vector<std::string> stops;
    // Line-anchored: a bare "To verify" stop would fire inside the
    // decomposition header's own "... easier to verify:".
    if (!config_.step_by_step) stops.push_back("\n" + std::string(pt::kSubclaimHeaderPrefix));
    stops.push_back(std::string(pt::kConfidenceStop));

    auto response = generate(std::move(stops));
    append(response.text);

    std::string_view block = response.text;
    auto marker = pt::find_next_marker(block);
    std::size_t head_end = marker ? marker->pos : block.size();
    std::string_view head = block.substr(0, head_end);
    state_.pending = std::string(block.substr(head_end));

    std::vector<Subclaim> subclaims;
    if (text::icontains(head, pt::kNoSplitMarker)) {
        subclaims.push_back(Subclaim{1, claim_.text});
    } else {
        auto items = pt::extract_numbered_list(head);
        require(!items.empty(), ErrorCode::unparseable_decomposition,
                "no numbered subclaim list and no no-split sentence");
        if (static_cast<int>(items.size()) > config_.max_subclaims) {
            items.resize(static_cast<std::size_t>(config_.max_subclaims));
            warnings_.push_back("subclaim-cap-hit");
        }
        for (std::size_t i = 0; i < items.size(); ++i) {
            subclaims.push_back(Subclaim{static_cast<int>(i) + 1, items[i]});
        }
    }
    state_.phase = Phase::subclaim_loop;
    return subclaims;
}

std::optional<EvidenceSnippet> HissSession::acquire_evidence(const std::string& question) {
    auto hits = hiss::search(question, cache_, engine_);
    auto filtered = filter_fact_check(std::move(hits), config_.filter);
    return select_top_snippet(filtered, question);
}

void HissSession::answer_unaided(QAStep& step) {
    ensure_line_start();
    append(pt::kAnswerPrefix);
    auto response = generate({std::string(pt::kConfidenceStop)});
    append(response.text);
    auto [tail, rest] = split_at_marker(response.text);
    step.answer = std::string(text::trim(tail));
    state_.pending = rest;
}

QAStep HissSession::ask_and_answer(const std::string& question) {
    QAStep step;
    step.question = question;

    append_instruction();
    std::vector<std::string> stops{std::string(pt::kNoStop)};
    if (config_.search_policy == SearchPolicy::always)
        stops.push_back(std::string(pt::kAnswerPrefix));
    stops.push_back(std::string(pt::kConfidenceStop));

    auto response = generate(std::move(stops));
    append(response.text);

    auto detection = detect_confidence(response);
    step.confidence = detection.confidence;
    if (detection.ambiguous) step.warnings.push_back("ambiguous-confidence");

    bool stopped_no = response.finish_reason == FinishReason::stop_sequence_hit &&
                      response.matched_stop.has_value() &&
                      text::iequals(*response.matched_stop, pt::kNoStop);
    if (stopped_no) append("No.");  // the stop swallowed the token; keep the transcript whole

    bool do_search =
        config_.search_policy == SearchPolicy::always ||
        (config_.search_policy == SearchPolicy::self_decide &&
         step.confidence == Confidence::not_confident);

    if (do_search) {
        auto evidence = acquire_evidence(question);
        if (evidence) {
            step.evidence = evidence;
            ensure_line_start();
            append(std::string(pt::kAnswerPrefix) + " " + evidence->text);
            auto continuation = generate({std::string(pt::kConfidenceStop)});
            append(continuation.text);
            auto [tail, rest] = split_at_marker(continuation.text);
            step.answer = std::string(text::trim(evidence->text + tail));
            state_.pending = rest;
        } else {
            step.warnings.push_back("no-evidence");
            answer_unaided(step);
        }
    } else if (step.confidence == Confidence::not_confident) {
        // Search disallowed; the model answers from its own knowledge.
        answer_unaided(step);
    } else {
        // Confident: the answer rode along in the same generation.
        std::string_view body = response.text;
        std::size_t answer_pos = body.find(pt::kAnswerPrefix);
        auto first_marker = pt::find_next_marker(body);
        if (answer_pos != std::string_view::npos &&
            (!first_marker || answer_pos < first_marker->pos)) {
            auto [tail, rest] = split_at_marker(body.substr(answer_pos + pt::kAnswerPrefix.size()));
            step.answer = std::string(text::trim(tail));
            state_.pending = rest;
        } else if (first_marker) {
            state_.pending = std::string(body.substr(first_marker->pos));
        } else {
            std::size_t nl = body.find('\n');
            std::string_view after = nl == std::string_view::npos ? std::string_view{}
                                                                  : body.substr(nl + 1);
            auto [tail, rest] = split_at_marker(after);
            step.answer = std::string(text::trim(tail));
            state_.pending = rest;
        }
        if (step.answer.empty() && text::trim(state_.pending).empty()) answer_unaided(step);
    }

    if (step.answer.empty()) step.warnings.push_back("empty-answer");
    return step;
}

void HissSession::discard_pending_to_boundary() {
    std::size_t from = 0;
    for (;;) {
        auto marker = pt::find_next_marker(state_.pending, from);
        if (!marker) {
            state_.pending.clear();
            return;
        }
        if (marker->kind != pt::MarkerKind::question) {
            state_.pending.erase(0, marker->pos);
            return;
        }
        from = marker->pos + pt::kQuestionPrefix.size();
    }
}

SubclaimVerification HissSession::run_subclaim_loop(const Subclaim& subclaim) {
    state_.phase = Phase::subclaim_loop;
    state_.current_subclaim = subclaim.index;
    state_.question_count = 0;

    SubclaimVerification out{subclaim, {}};
    bool header_seen = false;
    int stalls = 0;

    for (;;) {
        if (state_.question_count >= config_.max_questions_per_subclaim) {
            warnings_.push_back("question-cap-exceeded:subclaim-" +
                                std::to_string(subclaim.index));
            discard_pending_to_boundary();
            break;
        }
        if (text::trim(state_.pending).empty()) {
            state_.pending.clear();
            auto response = generate({std::string(pt::kConfidenceStop)});
            append(response.text);
            state_.pending = response.text;
            if (text::trim(state_.pending).empty()) {
                if (++stalls >= 2) {
                    warnings_.push_back("stalled-generation:subclaim-" +
                                        std::to_string(subclaim.index));
                    break;
                }
                continue;
            }
        }

        auto marker = pt::find_next_marker(state_.pending);
        if (!marker) {
            // Unstructured prose; it stays in the transcript but drives nothing.
            state_.pending.clear();
            if (++stalls >= 2) {
                warnings_.push_back("no-structure:subclaim-" + std::to_string(subclaim.index));
                break;
            }
            continue;
        }
        stalls = 0;

        if (marker->kind == pt::MarkerKind::final_text) {
            state_.pending.erase(0, marker->pos);
            break;
        }
        if (marker->kind == pt::MarkerKind::subclaim_header) {
            if (!header_seen && out.steps.empty()) {
                header_seen = true;
                auto next = pt::find_next_marker(state_.pending,
                                                 marker->pos + pt::kSubclaimHeaderPrefix.size());
                state_.pending.erase(0, next ? next->pos : state_.pending.size());
                continue;
            }
            state_.pending.erase(0, marker->pos);
            break;  // the next subclaim begins here
        }

        // Question marker. If structure continues past it the question was
        // abandoned by the model; only a tail question is live.
        auto later = pt::find_next_marker(state_.pending,
                                          marker->pos + pt::kQuestionPrefix.size());
        while (later && later->kind == pt::MarkerKind::question) {
            later = pt::find_next_marker(state_.pending,
                                         later->pos + pt::kQuestionPrefix.size());
        }
        if (later) {
            state_.pending.erase(0, later->pos);
            continue;
        }

        // Consecutive duplicate questions collapse to the last occurrence.
        std::size_t last = marker->pos;
        for (std::size_t p = state_.pending.find(pt::kQuestionPrefix, marker->pos + 1);
             p != std::string::npos; p = state_.pending.find(pt::kQuestionPrefix, p + 1)) {
            last = p;
        }
        std::string question{
            text::trim(state_.pending.substr(last + pt::kQuestionPrefix.size()))};
        state_.pending.clear();
        if (question.empty()) {
            if (++stalls >= 2) {
                warnings_.push_back("empty-question:subclaim-" + std::to_string(subclaim.index));
                break;
            }
            continue;
        }

        state_.question_count += 1;
        out.steps.push_back(ask_and_answer(question));
    }

    if (out.steps.empty())
        warnings_.push_back("no-questions:subclaim-" + std::to_string(subclaim.index));
    return out;
}

SubclaimVerification HissSession::direct_verify(const Subclaim& subclaim) {
    state_.phase = Phase::subclaim_loop;
    state_.current_subclaim = subclaim.index;

    QAStep step;
    step.question = subclaim.text;

    ensure_line_start();
    append(pt::direct_verification_header(subclaim.index, single_unsplit_) + "\n");

    // Without the question loop there is no confidence probe; any policy that
    // permits search degenerates to always-search here.
    bool searching = config_.search_policy != SearchPolicy::never;
    if (searching) {
        step.confidence = Confidence::not_confident;
        auto evidence = acquire_evidence(subclaim.text);
        if (evidence) {
            step.evidence = evidence;
            append(std::string(pt::kAnswerPrefix) + " " + evidence->text + "\n");
            step.answer = evidence->text;
        } else {
            step.warnings.push_back("no-evidence");
        }
    } else {
        step.confidence = Confidence::confident;
    }

    if (step.answer.empty()) {
        append(pt::kAnswerPrefix);
        auto response = generate({"\n" + std::string(pt::kSubclaimHeaderPrefix),
                                  "\n" + std::string(pt::kFinalSentinel),
                                  std::string(pt::kConfidenceStop)});
        append(response.text);
        auto [tail, rest] = split_at_marker(response.text);
        step.answer = std::string(text::trim(tail));
        if (text::starts_with_after_ws(rest, pt::kFinalSentinel)) {
            state_.pending = rest;
        } else {
            state_.pending.clear();
        }
        ensure_line_start();
    }

    if (step.answer.empty()) step.warnings.push_back("empty-answer");
    return SubclaimVerification{subclaim, {step}};
}

Verdict HissSession::run_final_prediction() {
    state_.phase = Phase::final_prediction;
    std::string final_text = state_.pending;
    state_.pending.clear();

    pt::FinalParse parsed;
    try {
        parsed = pt::parse_final_label(final_text, config_.scheme);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::no_final_line) throw;
        ensure_line_start();
        std::string elicitation = pt::final_elicitation(config_.scheme);
        append(elicitation);
        auto response = generate({"\n\n", "Q:"});
        append(response.text);
        final_text += "\n" + elicitation + response.text;
        parsed = pt::parse_final_label(final_text, config_.scheme);
    }
    return Verdict{make_label(config_.scheme, parsed.label), parsed.raw_line};
}

VerificationTrace HissSession::run() {
    try {
        config_.validate();
        state_ = assemble_prompt(demos_, claim_, config_);
        warnings_.clear();

        VerificationTrace trace;
        trace.claim = claim_;
        trace.config = config_.trace_config();
        trace.shot_count = config_.shot_count;
        trace.config_fingerprint = to_hex(fnv1a64(fingerprint_string()));

        std::vector<Subclaim> subclaims;
        if (config_.decompose) {
            subclaims = run_decomposition();
        } else {
            append(std::string(pt::kNoSplitSentence) + "\n");
            subclaims.push_back(Subclaim{1, claim_.text});
            state_.phase = Phase::subclaim_loop;
        }
        single_unsplit_ = subclaims.size() == 1 && subclaims[0].text == claim_.text;

        for (const auto& subclaim : subclaims) {
            trace.subclaims.push_back(config_.step_by_step ? run_subclaim_loop(subclaim)
                                                           : direct_verify(subclaim));
        }

        trace.verdict = run_final_prediction();
        trace.transcript = state_.prompt;
        trace.warnings = warnings_;
        return trace;
    } catch (const Error& e) {
        throw Error(e.code(), "claim '" + claim_.id + "': " + e.what());
    }
}

VerificationTrace run_hiss(const Claim& claim, const RunConfig& config, const DemoSet& demos,
                           Backend& backend, SearchCache& cache, SearchEngine* engine) {
    HissSession session(claim, config, demos, backend, cache, engine);
    return session.run();
}

RunStats stats_from_trace(const VerificationTrace& trace) {
    RunStats stats;
    for (const auto& sv : trace.subclaims) {
        for (const auto& step : sv.steps) {
            stats.questions += 1;
            if (step.confidence == Confidence::confident) stats.confident += 1;
            bool searched = step.evidence.has_value() ||
                            std::find(step.warnings.begin(), step.warnings.end(),
                                      "no-evidence") != step.warnings.end();
            if (searched) stats.searched += 1;
        }
    }
    return stats;
}

}  // namespace hiss
