#include "hiss/batch.hpp"

#include <atomic>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hiss/baselines.hpp"
#include "hiss/errors.hpp"
#include "hiss/text.hpp"

namespace hiss {

const char* to_string(Method method) {
    switch (method) {
        case Method::hiss: return "hiss";
        case Method::standard: return "standard";
        case Method::vanilla_cot: return "cot";
        case Method::search_cot: return "search-cot";
    }
    return "hiss";
}

std::optional<Method> method_from_string(std::string_view s) {
    if (s == "hiss") return Method::hiss;
    if (s == "standard") return Method::standard;
    if (s == "cot" || s == "vanilla-cot" || s == "vanilla_cot") return Method::vanilla_cot;
    if (s == "search-cot" || s == "search_cot") return Method::search_cot;
    return std::nullopt;
}

std::vector<std::pair<std::string, std::optional<std::string>>> read_predictions(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::io_failure, "cannot open " + path.string());
    std::vector<std::pair<std::string, std::optional<std::string>>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (text::trim(line).empty()) continue;
        std::size_t tab = line.find('\t');
        require(tab != std::string::npos, ErrorCode::malformed_line,
                path.string() + ": prediction lines are id<TAB>label");
        std::string id = line.substr(0, tab);
        std::string label = std::string(text::trim(line.substr(tab + 1)));
        if (label == kAbstainToken) {
            out.emplace_back(std::move(id), std::nullopt);
        } else {
            out.emplace_back(std::move(id), std::move(label));
        }
    }
    return out;
}

namespace {

struct Slot {
    bool done = false;
    bool skipped = false;
    bool failed = false;
    std::string trace_line;
    std::string pred_line;
    std::string error;
    RunStats stats;
};

}  // namespace

BatchSummary run_batch(const std::vector<Claim>& claims, Method method,
                       const RunConfig& config, const DemoSet& demos, Backend& backend,
                       SearchCache& cache, SearchEngine* engine, const BatchOptions& options,
                       std::ostream* log) {
    require(options.jobs >= 1, ErrorCode::precondition, "jobs must be >= 1");
    require(!options.traces_path.empty() && !options.predictions_path.empty(),
            ErrorCode::precondition, "batch needs traces and predictions paths");

    std::set<std::string> already_done;
    if (options.resume && std::filesystem::exists(options.predictions_path)) {
        for (const auto& [id, label] : read_predictions(options.predictions_path)) {
            already_done.insert(id);
        }
    }

    auto mode = options.resume ? std::ios::app : std::ios::trunc;
    std::ofstream traces(options.traces_path, mode);
    std::ofstream predictions(options.predictions_path, mode);
    require(traces.good(), ErrorCode::io_failure,
            "cannot write " + options.traces_path.string());
    require(predictions.good(), ErrorCode::io_failure,
            "cannot write " + options.predictions_path.string());

    std::vector<Slot> slots(claims.size());
    std::atomic<std::size_t> next{0};
    std::mutex mutex;
    std::condition_variable done_cv;

    auto process = [&](std::size_t i) {
        Slot slot;
        const Claim& claim = claims[i];
        if (already_done.count(claim.id) > 0) {
            slot.skipped = true;
        } else {
            try {
                switch (method) {
                    case Method::hiss: {
                        auto trace = run_hiss(claim, config, demos, backend, cache, engine);
                        slot.stats = stats_from_trace(trace);
                        slot.trace_line = trace_to_json_line(trace);
                        slot.pred_line = claim.id + "\t" + trace.verdict.label.value;
                        break;
                    }
                    case Method::standard: {
                        auto result = run_standard(claim, config.scheme, backend, demos,
                                                   config.shot_count);
                        slot.trace_line = baseline_result_line(claim, to_string(method), result);
                        slot.pred_line = claim.id + "\t" + result.verdict.label.value;
                        break;
                    }
                    case Method::vanilla_cot: {
                        auto result = run_vanilla_cot(claim, config.scheme, backend, demos,
                                                      config.shot_count);
                        slot.trace_line = baseline_result_line(claim, to_string(method), result);
                        slot.pred_line = claim.id + "\t" + result.verdict.label.value;
                        break;
                    }
                    case Method::search_cot: {
                        auto result = run_search_cot(claim, config.scheme, backend, demos,
                                                     cache, engine, config.shot_count,
                                                     config.filter);
                        slot.stats.searched = 1;
                        slot.trace_line = baseline_result_line(claim, to_string(method), result);
                        slot.pred_line = claim.id + "\t" + result.verdict.label.value;
                        break;
                    }
                }
            } catch (const std::exception& e) {
                slot.failed = true;
                slot.error = e.what();
                slot.pred_line = claim.id + "\t" + std::string(kAbstainToken);
            }
        }
        {
            std::lock_guard<std::mutex> lock(mutex);
            slot.done = true;
            slots[i] = std::move(slot);
        }
        done_cv.notify_all();
    };

    std::vector<std::thread> workers;
    int jobs = std::min<int>(options.jobs, static_cast<int>(claims.size()));
    for (int w = 0; w < std::max(1, jobs); ++w) {
        workers.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= claims.size()) return;
                process(i);
            }
        });
    }

    // Flush strictly in input order so interruption loses at most one claim
    // and output bytes are independent of the worker count.
    BatchSummary summary;
    for (std::size_t i = 0; i < claims.size(); ++i) {
        std::unique_lock<std::mutex> lock(mutex);
        done_cv.wait(lock, [&] { return slots[i].done; });
        Slot slot = std::move(slots[i]);
        lock.unlock();

        if (slot.skipped) {
            summary.skipped += 1;
            continue;
        }
        if (!slot.trace_line.empty()) {
            traces << slot.trace_line << "\n";
            traces.flush();
        }
        predictions << slot.pred_line << "\n";
        predictions.flush();
        if (slot.failed) {
            summary.failed += 1;
            if (log != nullptr)
                *log << "claim '" << claims[i].id << "' failed: " << slot.error << "\n";
        } else {
            summary.completed += 1;
            summary.stats.questions += slot.stats.questions;
            summary.stats.confident += slot.stats.confident;
            summary.stats.searched += slot.stats.searched;
        }
    }
    for (auto& worker : workers) worker.join();

    require(traces.good() && predictions.good(), ErrorCode::io_failure,
            "short write to batch outputs");
    return summary;
}

}  // namespace hiss
