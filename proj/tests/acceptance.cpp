// Acceptance suite: one callable check per criterion, each printing a
// [PASS]/[FAIL] line. Run with a criterion number (1-9) or nothing for all.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "hiss/backend.hpp"
#include "hiss/claim.hpp"
#include "hiss/datasets.hpp"
#include "hiss/errors.hpp"
#include "hiss/eval.hpp"
#include "hiss/labels.hpp"
#include "hiss/protocol.hpp"
#include "hiss/protocol_text.hpp"
#include "hiss/scripted_backend.hpp"
#include "hiss/search.hpp"
#include "hiss/text.hpp"
#include "support/paths.hpp"

#ifndef HISS_CLI_PATH
#define HISS_CLI_PATH "hiss"
#endif

namespace {

using namespace hiss;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void fail(const std::string& note) {
        pass = false;
        notes.push_back(note);
    }
    void note(const std::string& text) { notes.push_back(text); }
    void expect(bool condition, const std::string& note) {
        if (!condition) fail(note);
    }
};

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string sh(const std::string& command) {
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (pipe == nullptr) return {};
    std::string output;
    char buffer[4096];
    std::size_t n;
    while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) output.append(buffer, n);
    pclose(pipe);
    return output;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string quoted(const std::filesystem::path& path) { return "'" + path.string() + "'"; }

// ---------------------------------------------------------------------------
// 1. Metric convention oracle over the reported few-shot results.
// ---------------------------------------------------------------------------
void criterion_1(Outcome& out) {
    auto start = Clock::now();
    struct Cell {
        const char* row;
        const char* dataset;
        double p, r, f1;
    };
    const std::vector<Cell> cells = {
        {"standard", "rawfc", 48.5, 48.5, 48.5}, {"standard", "liar", 29.1, 25.1, 27.0},
        {"vanilla-cot", "rawfc", 42.4, 46.6, 44.4}, {"vanilla-cot", "liar", 22.6, 24.2, 23.7},
        {"search-cot", "rawfc", 47.2, 51.4, 49.2}, {"search-cot", "liar", 27.5, 23.6, 25.4},
        {"react", "rawfc", 51.2, 48.5, 49.8},    {"react", "liar", 33.2, 29.0, 31.0},
        {"hiss", "rawfc", 53.4, 54.4, 53.9},     {"hiss", "liar", 46.8, 31.3, 37.5},
    };
    for (const auto& cell : cells) {
        double computed = f1_from_pr(cell.p / 100.0, cell.r / 100.0) * 100.0;
        double diff = std::fabs(computed - cell.f1);
        char note[160];
        std::snprintf(note, sizeof(note), "%s/%s: harmonic(%.1f, %.1f) = %.4f vs printed %.1f (off by %.4f)",
                      cell.row, cell.dataset, cell.p, cell.r, computed, cell.f1, diff);
        out.expect(diff <= 0.05 + 1e-9, note);
    }
    double ms = elapsed_ms(start);
    out.expect(ms < 1000.0, "runtime " + std::to_string(ms) + " ms exceeds 1 s");
}

// ---------------------------------------------------------------------------
// 2. Scripted replay of the two-subclaim case through cmd_verify.
// ---------------------------------------------------------------------------
void criterion_2(Outcome& out) {
    auto start = Clock::now();
    std::string command =
        std::string(HISS_CLI_PATH) + " verify --fixture " +
        quoted(testsupport::fixture("military_spending_fixture.json")) + " --cache " +
        quoted(testsupport::fixture("military_spending_cache.json")) +
        " --freeze-cache --method hiss --scheme liar --assets-dir " +
        quoted(testsupport::repo_dir() / "assets" / "prompts") +
        " \"Says 57 percent of federal spending goes to the military and just 1 percent "
        "goes to food and agriculture, including food stamps.\"";

    std::vector<std::string> runs;
    for (int i = 0; i < 3; ++i) runs.push_back(sh(command));
    out.expect(!runs[0].empty(), "cmd_verify produced no output");
    out.expect(runs[0] == runs[1] && runs[1] == runs[2], "three runs differ byte-wise");

    try {
        auto trace = nlohmann::json::parse(runs[0]);
        out.expect(trace["subclaims"].size() == 2, "expected exactly 2 subclaims");
        const auto& s1 = trace["subclaims"][0]["steps"][0];
        const auto& s2 = trace["subclaims"][1]["steps"][0];
        out.expect(s1["confidence"] == "confident", "subclaim 1 should be confident");
        out.expect(s1["evidence"].is_null(), "subclaim 1 should carry no evidence");
        out.expect(s2["confidence"] == "not_confident", "subclaim 2 should be not confident");
        out.expect(!s2["evidence"].is_null(), "subclaim 2 should carry evidence");
        out.expect(trace["verdict"]["label"]["value"] == "false",
                   "verdict should be false");
    } catch (const std::exception& e) {
        out.fail(std::string("trace json: ") + e.what());
    }
    double ms = elapsed_ms(start);
    out.expect(ms < 2000.0, "runtime " + std::to_string(ms) + " ms exceeds 2 s");
}

// ---------------------------------------------------------------------------
// 3. Stop-sequence property suite.
// ---------------------------------------------------------------------------
void criterion_3(Outcome& out) {
    std::mt19937_64 rng(31337);
    const std::vector<std::string> words = {
        "yes", "No", "note", "answer", "Tell", "maybe", "north", "question",
        "half", "KNOW", "Tell me if you are confident", "nothing", "\n", "ok"};
    const std::vector<std::string> stop_pool = {
        "no", "Tell me if you are confident", "Answer:", "Q:", "halt"};

    for (int iter = 0; iter < 1000; ++iter) {
        std::string continuation;
        std::size_t n_words = rng() % 24;
        for (std::size_t w = 0; w < n_words; ++w) {
            continuation += words[rng() % words.size()];
            continuation += ' ';
        }
        std::vector<std::string> stops;
        std::size_t n_stops = 1 + rng() % 4;
        for (std::size_t s = 0; s < n_stops; ++s)
            stops.push_back(stop_pool[rng() % stop_pool.size()]);

        auto response = apply_stops(continuation, stops);
        for (const auto& stop : stops) {
            if (text::icontains(response.text, stop)) {
                out.fail("stop '" + stop + "' leaked into: " + response.text);
                return;
            }
        }
        // Independent scan for the earliest stop.
        std::size_t best_pos = std::string::npos;
        std::string best_stop;
        std::string folded = text::to_lower(continuation);
        for (const auto& stop : stops) {
            auto pos = folded.find(text::to_lower(stop));
            if (pos == std::string::npos) continue;
            if (pos < best_pos || (pos == best_pos && stop.size() > best_stop.size())) {
                best_pos = pos;
                best_stop = stop;
            }
        }
        if (best_pos == std::string::npos) {
            out.expect(response.finish_reason != FinishReason::stop_sequence_hit &&
                           response.text == continuation,
                       "spurious stop reported");
        } else {
            out.expect(response.finish_reason == FinishReason::stop_sequence_hit &&
                           response.matched_stop == best_stop &&
                           response.text.size() == best_pos,
                       "wrong stop or cut position");
        }
        if (!out.pass) return;
    }

    // The confidence gate over every yes/no line in the shipped demo assets.
    int lines_checked = 0;
    for (const char* asset : {"hiss_liar.txt", "hiss_rawfc.txt"}) {
        auto demos = load_demo_file(testsupport::asset(asset));
        for (const auto& demo : demos.demos) {
            const std::string needle = "Answer with \"yes\" or \"no\":";
            std::size_t pos = 0;
            while ((pos = demo.find(needle, pos)) != std::string::npos) {
                pos += needle.size();
                std::size_t eol = demo.find('\n', pos);
                std::string token = demo.substr(pos, eol - pos);
                auto response = apply_stops(token, {"no", "Tell me if you are confident"});
                auto detection = detect_confidence(response);
                bool expect_confident = text::icontains(token, "yes");
                out.expect((detection.confidence == Confidence::confident) == expect_confident,
                           "confidence gate misread token '" + token + "'");
                ++lines_checked;
            }
        }
    }
    out.expect(lines_checked >= 20, "too few confidence lines found in assets");
    out.note(std::to_string(lines_checked) + " asset confidence lines classified");
}

// ---------------------------------------------------------------------------
// 4. Fact-check URL filter suite.
// ---------------------------------------------------------------------------
void criterion_4(Outcome& out) {
    auto removed = [&](const std::string& url) {
        return filter_fact_check({SearchHit{url, "t", "s"}}).empty();
    };
    out.expect(removed("https://www.politifact.com/factchecks/2016/apr/26/viral-image/x/"),
               "politifact factchecks path survived");
    out.expect(removed("https://www.nytimes.com/spotlight/fact-checks"),
               "nytimes spotlight fact-checks survived");
    out.expect(!removed("https://www.cbo.gov/topics/defense"), "benign url was dropped");

    std::mt19937_64 rng(4242);
    const std::vector<std::string> segments = {
        "news",  "fact",     "check",     "fact-check", "Fact_Check", "fact%20checking",
        "facts", "politics", "FACTCHECK", "archive",    "review",     "fc",
        "checking", "factual", "fact-checking", "story"};
    for (int iter = 0; iter < 1000; ++iter) {
        std::vector<SearchHit> hits;
        for (int h = 0; h < 6; ++h) {
            std::string url = "https://s" + std::to_string(h) + ".example";
            std::size_t parts = 1 + rng() % 4;
            for (std::size_t p = 0; p < parts; ++p)
                url += "/" + segments[rng() % segments.size()];
            hits.push_back(SearchHit{url, "", ""});
        }
        auto kept = filter_fact_check(hits);
        for (const auto& hit : kept) {
            auto normalized = normalize_url(hit.url);
            if (normalized.find("factcheck") != std::string::npos ||
                normalized.find("factchecking") != std::string::npos) {
                out.fail("banned keyword survived in " + hit.url);
                return;
            }
        }
        if (filter_fact_check(kept) != kept) {
            out.fail("filter is not idempotent");
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// 5. Ablation invariants on the ten-claim scripted fixture.
// ---------------------------------------------------------------------------
void criterion_5(Outcome& out) {
    auto start = Clock::now();
    auto claims = import_jsonl(testsupport::fixture("batch10_claims.jsonl"), rawfc_scheme());
    auto demos = load_demo_file(testsupport::asset("hiss_rawfc.txt"));

    auto run_all = [&](RunConfig config) {
        auto backend = ScriptedBackend::from_file(testsupport::fixture("batch10_fixture.json"));
        auto cache = SearchCache::import_file(testsupport::fixture("batch10_cache.json"));
        cache.freeze();
        std::vector<VerificationTrace> traces;
        for (const auto& claim : claims)
            traces.push_back(run_hiss(claim, config, demos, *backend, cache, nullptr));
        return traces;
    };

    RunConfig base;
    base.scheme = rawfc_scheme();

    {
        auto config = base;
        config.decompose = false;
        for (const auto& trace : run_all(config)) {
            out.expect(trace.subclaims.size() == 1 &&
                           trace.subclaims[0].subclaim.text == trace.claim.text,
                       "no-decompose: trace for '" + trace.claim.id +
                           "' is not a single claim-sized subclaim");
        }
    }
    {
        auto config = base;
        config.search_policy = SearchPolicy::never;
        for (const auto& trace : run_all(config)) {
            for (const auto& sv : trace.subclaims) {
                for (const auto& step : sv.steps) {
                    out.expect(!step.evidence.has_value(),
                               "search=never: evidence on claim '" + trace.claim.id + "'");
                }
            }
        }
    }
    {
        auto config = base;
        config.search_policy = SearchPolicy::always;
        for (const auto& trace : run_all(config)) {
            for (const auto& sv : trace.subclaims) {
                for (const auto& step : sv.steps) {
                    bool flagged_missing =
                        std::find(step.warnings.begin(), step.warnings.end(), "no-evidence") !=
                        step.warnings.end();
                    out.expect(step.evidence.has_value() || flagged_missing,
                               "search=always: unflagged evidence gap on '" +
                                   trace.claim.id + "'");
                }
            }
        }
    }
    {
        for (const auto& trace : run_all(base)) {  // self-decide default
            for (const auto& sv : trace.subclaims) {
                for (const auto& step : sv.steps) {
                    out.expect(step.evidence.has_value() ==
                                   (step.confidence == Confidence::not_confident),
                               "self-decide: evidence/confidence mismatch on '" +
                                   trace.claim.id + "'");
                }
            }
        }
    }
    double ms = elapsed_ms(start);
    out.expect(ms < 5000.0, "runtime " + std::to_string(ms) + " ms exceeds 5 s");
}

// ---------------------------------------------------------------------------
// 6. Label parser: longest match over twenty templated final lines.
// ---------------------------------------------------------------------------
void criterion_6(Outcome& out) {
    const auto& scheme = liar_scheme();
    const std::string sentence = label_set_sentence(scheme);
    const std::vector<std::string> templates = {
        "Based on the answers to these questions, it is clear that among " + sentence +
            ", the claim is classified as {L}.",
        "Based on the answers to these questions, it is clear that among " + sentence +
            ", the claim can be classified as {L}.",
        "Thus the claim is classified as {L}.",
        "The claim is classified as {L}",
        "the claim is classified as {L}!",
        "THE CLAIM IS CLASSIFIED AS {U}.",
        "After review, the claim is classified as {L}.",
        "Weighing everything, the claim is classified as {L}, with high certainty.",
        "A prelude line.\nOverall the claim is classified as {L}.\nMore commentary follows.",
        "the claim can be classified as {L}. Based on the answers to these questions, it is "
            "clear that among " + sentence + ", the claim can be classified as {L}.",
        "the claim is classified as mostly-true.\nCorrection: the claim is classified as {L}.",
        "Among " + sentence + ", the claim is classified as {L}.",
        " the claim is classified as {L} ",
        "In summary, the claim is classified as {L}; the reasoning is above.",
        "Verdict: classified as {L}.",
        "It is classified as {L} by this checker.",
        "classified as {L}.",
        "After weighing sources, the claim is classified as {L}.",
        "Based on the answers to these questions, it is clear that among " + sentence +
            ", the claim is classified as {L}. This completes the check.",
        "Q: another line?\nThe claim is classified as {L}.\n",
    };
    out.expect(templates.size() == 20, "expected 20 templates");

    int cases = 0;
    for (const auto& label : scheme.labels) {
        for (const auto& tmpl : templates) {
            std::string upper = text::to_lower(label);
            for (char& c : upper) c = static_cast<char>(std::toupper(c));
            std::string line = text::replace_all(tmpl, "{L}", label);
            line = text::replace_all(line, "{U}", upper);
            try {
                auto parsed = protocol_text::parse_final_label(line, scheme);
                if (parsed.label != label) {
                    out.fail("template parsed '" + parsed.label + "' instead of '" + label +
                             "' in: " + line);
                    return;
                }
            } catch (const std::exception& e) {
                out.fail("template failed for '" + label + "': " + e.what());
                return;
            }
            ++cases;
        }
    }
    out.note(std::to_string(cases) + " label/template cases parsed");

    for (const char* word : {"plausible", "uncertain", "unknown", "indeterminate"}) {
        try {
            protocol_text::parse_final_label(
                "the claim is classified as " + std::string(word) + ".", scheme);
            out.fail(std::string("non-scheme word '") + word + "' produced a label");
        } catch (const Error& e) {
            out.expect(e.code() == ErrorCode::label_not_in_scheme,
                       std::string("unexpected error for '") + word + "'");
        }
    }
}

// ---------------------------------------------------------------------------
// 7. Eval oracle: hand-counted case plus invariants over random matrices.
// ---------------------------------------------------------------------------
void criterion_7(Outcome& out) {
    const auto& scheme = rawfc_scheme();
    std::vector<Label> golds = {make_label(scheme, "true"), make_label(scheme, "false"),
                                make_label(scheme, "half"), make_label(scheme, "true")};
    std::vector<Label> preds = {make_label(scheme, "true"), make_label(scheme, "half"),
                                make_label(scheme, "half"), make_label(scheme, "false")};
    auto report = macro_metrics(confusion(preds, golds, scheme));

    auto close = [](double a, double b) { return std::fabs(a - b) < 1e-12; };
    std::map<std::string, ClassMetrics> by_label(report.per_class.begin(),
                                                 report.per_class.end());
    out.expect(close(by_label["true"].precision, 1.0) && close(by_label["true"].recall, 0.5),
               "class true expected (P,R) = (1.0, 0.5)");
    out.expect(close(by_label["false"].precision, 0.0) && close(by_label["false"].recall, 0.0),
               "class false expected (P,R) = (0, 0)");
    out.expect(close(by_label["half"].precision, 0.5) && close(by_label["half"].recall, 1.0),
               "class half expected (P,R) = (0.5, 1.0)");
    out.expect(close(report.macro_f1, 0.5), "macro F1 must be exactly 0.5");

    std::mt19937_64 rng(777);
    for (int iter = 0; iter < 10000; ++iter) {
        std::size_t n = 2 + rng() % 6;
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) labels.push_back("l" + std::to_string(i));
        ConfusionMatrix matrix;
        matrix.scheme = make_scheme("fuzz", labels);
        matrix.counts.assign(n, std::vector<long>(n, 0));
        matrix.abstained.assign(n, 0);
        long total = 0;
        for (auto& row : matrix.counts)
            for (auto& cell : row) {
                cell = static_cast<long>(rng() % 5);
                total += cell;
            }
        if (total == 0) matrix.counts[0][0] = 1;

        auto r = macro_metrics(matrix);
        bool ok = r.macro_f1 >= 0.0 && r.macro_p <= 1.0 && r.macro_r <= 1.0 &&
                  r.macro_f1 <= std::max(r.macro_p, r.macro_r) + 1e-12 &&
                  r.macro_f1 <= (r.macro_p + r.macro_r) / 2.0 + 1e-12;
        if (!ok) {
            out.fail("invariant violated at iteration " + std::to_string(iter));
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// 8. End-to-end determinism of parallel batch runs.
// ---------------------------------------------------------------------------
void criterion_8(Outcome& out) {
    auto dir = std::filesystem::temp_directory_path() / "hiss-acceptance";
    std::filesystem::create_directories(dir);

    auto run = [&](int tag) {
        auto traces = dir / ("traces" + std::to_string(tag) + ".jsonl");
        auto preds = dir / ("preds" + std::to_string(tag) + ".tsv");
        std::string command =
            std::string(HISS_CLI_PATH) + " batch --dataset jsonl --data-path " +
            quoted(testsupport::fixture("batch10_claims.jsonl")) +
            " --scheme rawfc --fixture " + quoted(testsupport::fixture("batch10_fixture.json")) +
            " --cache " + quoted(testsupport::fixture("batch10_cache.json")) +
            " --freeze-cache --method hiss --jobs 4 --seed 7 --assets-dir " +
            quoted(testsupport::repo_dir() / "assets" / "prompts") + " --traces-out " +
            quoted(traces) + " --predictions-out " + quoted(preds);
        sh(command);
        return std::make_pair(read_file(traces), read_file(preds));
    };

    auto [traces_a, preds_a] = run(1);
    auto [traces_b, preds_b] = run(2);
    out.expect(!traces_a.empty() && !preds_a.empty(), "batch produced no output");
    out.expect(traces_a == traces_b, "trace files differ between runs");
    out.expect(preds_a == preds_b, "prediction files differ between runs");

    std::size_t lines = static_cast<std::size_t>(
        std::count(traces_a.begin(), traces_a.end(), '\n'));
    out.expect(lines == 10, "expected 10 trace lines, got " + std::to_string(lines));
}

// ---------------------------------------------------------------------------
// 9. Dataset loader counts.
// ---------------------------------------------------------------------------
void criterion_9(Outcome& out) {
    auto mini_liar = load_liar(testsupport::fixture("liar_mini.tsv"), Split::test);
    out.expect(mini_liar.size() == 6, "liar mini fixture must hold 6 claims");
    auto mini_rawfc = load_rawfc(testsupport::fixture("rawfc_mini"), Split::test);
    out.expect(mini_rawfc.size() == 3, "rawfc mini fixture must hold 3 claims");
    std::map<std::string, int> mini_counts;
    for (const auto& claim : mini_rawfc) mini_counts[claim.gold->value] += 1;
    out.expect(mini_counts["true"] == 1 && mini_counts["half"] == 1 &&
                   mini_counts["false"] == 1,
               "rawfc mini fixture class balance is off");

    if (const char* dir = std::getenv("HISS_LIAR_DIR"); dir != nullptr && *dir) {
        auto test = load_liar(dir, Split::test);
        auto val = load_liar(dir, Split::val);
        out.expect(test.size() == 1251,
                   "liar test split: expected 1251, got " + std::to_string(test.size()));
        out.expect(val.size() == 1274,
                   "liar val split: expected 1274, got " + std::to_string(val.size()));
        out.note("full liar split counts verified");
    } else {
        out.note("HISS_LIAR_DIR not set; full liar counts skipped");
    }
    if (const char* dir = std::getenv("HISS_RAWFC_DIR"); dir != nullptr && *dir) {
        auto test = load_rawfc(dir, Split::test);
        out.expect(test.size() == 200,
                   "rawfc test split: expected 200, got " + std::to_string(test.size()));
        std::map<std::string, int> counts;
        for (const auto& claim : test) counts[claim.gold->value] += 1;
        out.expect(counts["true"] == 67 && counts["half"] == 66 && counts["false"] == 67,
                   "rawfc class counts: expected 67/66/67");
        out.note("full rawfc split counts verified");
    } else {
        out.note("HISS_RAWFC_DIR not set; full rawfc counts skipped");
    }
}

const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> kCriteria = {
    {"metric convention oracle over reported few-shot results", criterion_1},
    {"two-subclaim case replay through cmd_verify", criterion_2},
    {"stop-sequence property suite", criterion_3},
    {"fact-check url filter suite", criterion_4},
    {"ablation invariants on the ten-claim fixture", criterion_5},
    {"label parser longest-match suite", criterion_6},
    {"eval oracle and metric invariants", criterion_7},
    {"end-to-end determinism of parallel batches", criterion_8},
    {"dataset loader counts", criterion_9},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    bool all_pass = true;
    for (std::size_t i = 0; i < kCriteria.size(); ++i) {
        int number = static_cast<int>(i) + 1;
        if (only != 0 && only != number) continue;

        Outcome outcome;
        auto start = Clock::now();
        try {
            kCriteria[i].second(outcome);
        } catch (const std::exception& e) {
            outcome.fail(std::string("exception: ") + e.what());
        }
        double ms = elapsed_ms(start);

        std::printf("criterion %d [%s] %s (%.0f ms)\n", number,
                    outcome.pass ? "PASS" : "FAIL", kCriteria[i].first.c_str(), ms);
        for (const auto& note : outcome.notes) {
            std::printf("    %s %s\n", outcome.pass ? "note:" : "!", note.c_str());
        }
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
