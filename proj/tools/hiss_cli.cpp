// Command-line front end: verify one claim, run batches, evaluate
// predictions, sweep ablations, inspect caches and demo assets.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hiss/backend.hpp"
#include "hiss/baselines.hpp"
#include "hiss/batch.hpp"
#include "hiss/claim.hpp"
#include "hiss/datasets.hpp"
#include "hiss/errors.hpp"
#include "hiss/eval.hpp"
#include "hiss/http_backend.hpp"
#include "hiss/http_search.hpp"
#include "hiss/protocol.hpp"
#include "hiss/prompt_assets.hpp"
#include "hiss/scripted_backend.hpp"
#include "hiss/search.hpp"

#ifndef HISS_DEFAULT_ASSETS_DIR
#define HISS_DEFAULT_ASSETS_DIR "assets/prompts"
#endif

namespace {

using hiss::Error;
using hiss::ErrorCode;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::no_final_line:
        case ErrorCode::label_not_in_scheme:
        case ErrorCode::unparseable_decomposition:
            return 2;
        default:
            return 1;
    }
}

struct CommonOptions {
    std::string config_path;
    std::string scheme_name = "liar";
    int shot_count = 4;
    std::string search_policy = "self-decide";
    bool no_decompose = false;
    bool no_stepwise = false;
    int max_subclaims = 6;
    int max_questions = 6;
    std::string fixture_path;
    std::string cache_path;
    bool freeze_cache = false;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string assets_dir;
    std::string method = "hiss";
    std::string out_path;
    std::string format = "text";

    // from config file
    hiss::HttpBackendConfig llm;
    hiss::HttpSearchConfig search_engine;
    hiss::FilterConfig filter;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts, bool with_method) {
    cmd->add_option("--config", opts.config_path, "JSON config file");
    cmd->add_option("--scheme", opts.scheme_name, "label scheme: liar or rawfc");
    cmd->add_option("--k", opts.shot_count, "demonstration count (default 4)");
    cmd->add_option("--search-policy", opts.search_policy,
                    "never, always or self-decide");
    cmd->add_flag("--no-decompose", opts.no_decompose, "skip claim decomposition");
    cmd->add_flag("--no-stepwise", opts.no_stepwise, "skip the question loop");
    cmd->add_option("--max-subclaims", opts.max_subclaims, "subclaim cap");
    cmd->add_option("--max-questions", opts.max_questions, "questions per subclaim cap");
    cmd->add_option("--fixture", opts.fixture_path, "scripted backend fixture");
    cmd->add_option("--cache", opts.cache_path, "search cache file");
    cmd->add_flag("--freeze-cache", opts.freeze_cache, "cache misses become errors");
    cmd->add_option("--seed", opts.seed, "deterministic seed");
    cmd->add_option("--jobs", opts.jobs, "parallel claims (default 1)");
    cmd->add_option("--assets-dir", opts.assets_dir, "prompt asset directory");
    cmd->add_option("--out", opts.out_path, "output path (default stdout)");
    cmd->add_option("--format", opts.format, "report format: text, json or csv");
    if (with_method) {
        cmd->add_option("--method", opts.method, "hiss, standard, cot or search-cot");
    }
}

struct DatasetOptions {
    std::string dataset;  // liar, rawfc, jsonl
    std::string data_path;
    std::string split = "test";
};

void add_dataset_options(CLI::App* cmd, DatasetOptions& opts) {
    cmd->add_option("--dataset", opts.dataset, "liar, rawfc or jsonl")->required();
    cmd->add_option("--data-path", opts.data_path, "dataset file or directory")->required();
    cmd->add_option("--split", opts.split, "train, val or test");
}

void load_config_file(CommonOptions& opts, const CLI::App& parsed) {
    if (opts.config_path.empty()) return;
    std::ifstream in(opts.config_path);
    hiss::require(in.good(), ErrorCode::io_failure, "cannot open config " + opts.config_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        hiss::fail(ErrorCode::io_failure, opts.config_path + ": " + e.what());
    }
    if (j.contains("llm")) {
        const auto& llm = j.at("llm");
        opts.llm.endpoint = llm.value("endpoint", opts.llm.endpoint);
        opts.llm.model = llm.value("model", opts.llm.model);
        opts.llm.timeout_ms = llm.value("timeout_ms", opts.llm.timeout_ms);
        opts.llm.api_key_env = llm.value("api_key_env", opts.llm.api_key_env);
    }
    if (j.contains("search")) {
        const auto& s = j.at("search");
        opts.search_engine.endpoint = s.value("endpoint", opts.search_engine.endpoint);
        opts.search_engine.api_key_env = s.value("api_key_env", opts.search_engine.api_key_env);
        opts.search_engine.fetch_depth = s.value("fetch_depth", opts.search_engine.fetch_depth);
        opts.search_engine.timeout_ms = s.value("timeout_ms", opts.search_engine.timeout_ms);
    }
    if (j.contains("filter_keywords")) {
        opts.filter.banned_keywords = j.at("filter_keywords").get<std::vector<std::string>>();
    }
    // Config-file defaults apply only where the flag was not given.
    if (j.contains("defaults")) {
        const auto& d = j.at("defaults");
        auto absent = [&](const char* flag) { return parsed.count(flag) == 0; };
        if (d.contains("scheme") && absent("--scheme"))
            opts.scheme_name = d.at("scheme").get<std::string>();
        if (d.contains("k") && absent("--k")) opts.shot_count = d.at("k").get<int>();
        if (d.contains("search_policy") && absent("--search-policy"))
            opts.search_policy = d.at("search_policy").get<std::string>();
        if (d.contains("jobs") && absent("--jobs")) opts.jobs = d.at("jobs").get<int>();
        if (d.contains("max_subclaims") && absent("--max-subclaims"))
            opts.max_subclaims = d.at("max_subclaims").get<int>();
        if (d.contains("max_questions") && absent("--max-questions"))
            opts.max_questions = d.at("max_questions").get<int>();
        if (d.contains("assets_dir") && absent("--assets-dir"))
            opts.assets_dir = d.at("assets_dir").get<std::string>();
    }
}

const hiss::LabelScheme& resolve_scheme(const std::string& name) {
    const hiss::LabelScheme* scheme = hiss::find_builtin_scheme(name);
    hiss::require(scheme != nullptr, ErrorCode::precondition,
                  "unknown scheme '" + name + "' (expected liar or rawfc)");
    return *scheme;
}

std::filesystem::path assets_dir(const CommonOptions& opts) {
    if (!opts.assets_dir.empty()) return opts.assets_dir;
    if (const char* env = std::getenv("HISS_ASSETS_DIR"); env != nullptr && *env) return env;
    return HISS_DEFAULT_ASSETS_DIR;
}

std::filesystem::path asset_file(const CommonOptions& opts, const std::string& method) {
    std::string stem = method == "hiss" ? "hiss" : (method == "standard" ? "standard" : "cot");
    return assets_dir(opts) / (stem + "_" + opts.scheme_name + ".txt");
}

hiss::RunConfig build_run_config(const CommonOptions& opts) {
    hiss::RunConfig config;
    config.scheme = resolve_scheme(opts.scheme_name);
    config.shot_count = opts.shot_count;
    auto policy = hiss::search_policy_from_string(
        opts.search_policy == "self-decide" ? "self_decide" : opts.search_policy);
    hiss::require(policy.has_value(), ErrorCode::precondition,
                  "unknown search policy '" + opts.search_policy + "'");
    config.search_policy = *policy;
    config.decompose = !opts.no_decompose;
    config.step_by_step = !opts.no_stepwise;
    config.max_subclaims = opts.max_subclaims;
    config.max_questions_per_subclaim = opts.max_questions;
    config.filter = opts.filter;
    return config;
}

std::shared_ptr<hiss::Backend> build_backend(const CommonOptions& opts) {
    if (!opts.fixture_path.empty()) {
        return hiss::ScriptedBackend::from_file(opts.fixture_path);
    }
    const char* key = std::getenv(opts.llm.api_key_env.c_str());
    hiss::require(key != nullptr && *key, ErrorCode::backend_unavailable,
                  "no --fixture given and " + opts.llm.api_key_env + " is not set");
    return std::make_shared<hiss::HttpBackend>(opts.llm);
}

hiss::SearchCache build_cache(const CommonOptions& opts) {
    hiss::SearchCache cache;
    if (!opts.cache_path.empty() && std::filesystem::exists(opts.cache_path)) {
        cache = hiss::SearchCache::import_file(opts.cache_path);
    }
    if (opts.freeze_cache) cache.freeze();
    return cache;
}

std::unique_ptr<hiss::SearchEngine> build_engine(const CommonOptions& opts) {
    if (opts.freeze_cache) return nullptr;  // frozen runs never touch the network
    const char* key = std::getenv(opts.search_engine.api_key_env.c_str());
    if (key == nullptr || !*key) return nullptr;
    return std::make_unique<hiss::HttpSearchEngine>(opts.search_engine);
}

std::vector<hiss::Claim> load_dataset(const DatasetOptions& data,
                                      const hiss::LabelScheme& scheme) {
    auto split = hiss::split_from_string(data.split);
    hiss::require(split.has_value(), ErrorCode::precondition,
                  "unknown split '" + data.split + "'");
    if (data.dataset == "liar") return hiss::load_liar(data.data_path, *split);
    if (data.dataset == "rawfc") return hiss::load_rawfc(data.data_path, *split);
    if (data.dataset == "jsonl") return hiss::import_jsonl(data.data_path, scheme);
    hiss::fail(ErrorCode::precondition, "unknown dataset '" + data.dataset + "'");
}

void write_text_output(const std::string& payload, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path);
    hiss::require(out.good(), ErrorCode::io_failure, "cannot write " + out_path);
    out << payload;
    hiss::require(out.good(), ErrorCode::io_failure, "short write to " + out_path);
}

int cmd_verify(const CommonOptions& opts, const std::string& claim_text,
               const std::string& claim_id) {
    const auto& scheme = resolve_scheme(opts.scheme_name);
    hiss::Claim claim{claim_id, claim_text, std::nullopt, {}};
    auto backend = build_backend(opts);
    auto cache = build_cache(opts);
    auto engine = build_engine(opts);
    auto demos = hiss::load_demo_file(asset_file(opts, opts.method));

    std::string line;
    if (opts.method == "hiss") {
        auto config = build_run_config(opts);
        auto trace = hiss::run_hiss(claim, config, demos, *backend, cache, engine.get());
        line = hiss::trace_to_json_line(trace);
    } else if (opts.method == "standard") {
        auto result = hiss::run_standard(claim, scheme, *backend, demos, opts.shot_count);
        line = hiss::baseline_result_line(claim, opts.method, result);
    } else if (opts.method == "cot") {
        auto result = hiss::run_vanilla_cot(claim, scheme, *backend, demos, opts.shot_count);
        line = hiss::baseline_result_line(claim, opts.method, result);
    } else if (opts.method == "search-cot") {
        auto result = hiss::run_search_cot(claim, scheme, *backend, demos, cache,
                                           engine.get(), opts.shot_count, opts.filter);
        line = hiss::baseline_result_line(claim, opts.method, result);
    } else {
        hiss::fail(ErrorCode::precondition, "unknown method '" + opts.method + "'");
    }
    write_text_output(line + "\n", opts.out_path);
    return 0;
}

struct BatchPaths {
    std::string traces = "traces.jsonl";
    std::string predictions = "predictions.tsv";
    bool resume = false;
};

int cmd_batch(const CommonOptions& opts, const DatasetOptions& data, const BatchPaths& paths) {
    auto config = build_run_config(opts);
    auto claims = load_dataset(data, config.scheme);
    auto backend = build_backend(opts);
    auto cache = build_cache(opts);
    auto engine = build_engine(opts);
    auto method = hiss::method_from_string(opts.method);
    hiss::require(method.has_value(), ErrorCode::precondition,
                  "unknown method '" + opts.method + "'");
    auto demos = hiss::load_demo_file(asset_file(opts, opts.method));

    hiss::BatchOptions options;
    options.jobs = opts.jobs;
    options.resume = paths.resume;
    options.traces_path = paths.traces;
    options.predictions_path = paths.predictions;

    auto summary = hiss::run_batch(claims, *method, config, demos, *backend, cache,
                                   engine.get(), options, &std::cerr);
    std::cout << "claims=" << claims.size() << " completed=" << summary.completed
              << " failed=" << summary.failed << " skipped=" << summary.skipped
              << " questions=" << summary.stats.questions
              << " confident=" << summary.stats.confident
              << " searched=" << summary.stats.searched << "\n";
    return summary.failed > 0 ? 2 : 0;
}

hiss::EvalReport evaluate_predictions(const std::filesystem::path& predictions_path,
                                      const std::vector<hiss::Claim>& golds,
                                      const hiss::LabelScheme& scheme,
                                      std::vector<std::string>* abstained_ids) {
    std::map<std::string, hiss::Label> gold_by_id;
    for (const auto& claim : golds) {
        hiss::require(claim.gold.has_value(), ErrorCode::precondition,
                      "gold dataset claim '" + claim.id + "' has no label");
        gold_by_id.emplace(claim.id, *claim.gold);
    }

    std::vector<std::optional<hiss::Label>> preds;
    std::vector<hiss::Label> gold_vec;
    for (const auto& [id, label] : hiss::read_predictions(predictions_path)) {
        auto it = gold_by_id.find(id);
        hiss::require(it != gold_by_id.end(), ErrorCode::unknown_id,
                      "prediction for unknown id '" + id + "'");
        gold_vec.push_back(it->second);
        if (label.has_value()) {
            preds.push_back(hiss::make_label(scheme, *label));
        } else {
            preds.push_back(std::nullopt);
            if (abstained_ids != nullptr) abstained_ids->push_back(id);
        }
    }
    auto matrix = hiss::confusion_with_abstentions(preds, gold_vec, scheme);
    return hiss::macro_metrics(matrix);
}

int cmd_eval(const CommonOptions& opts, const DatasetOptions& data,
             const std::string& predictions_path, const std::string& compare_path,
             int iterations) {
    const auto& scheme = resolve_scheme(opts.scheme_name);
    auto golds = load_dataset(data, scheme);
    std::vector<std::string> abstained;
    auto report = evaluate_predictions(predictions_path, golds, scheme, &abstained);

    auto format = hiss::report_format_from_string(opts.format);
    hiss::require(format.has_value(), ErrorCode::precondition,
                  "unknown format '" + opts.format + "'");
    std::ostringstream buffer;
    hiss::write_report(report, *format, buffer);
    if (!abstained.empty()) {
        buffer << "abstained ids:";
        for (const auto& id : abstained) buffer << " " << id;
        buffer << "\n";
    }

    // Paired significance test against a second predictions file; abstentions
    // are not comparable pairwise, so both systems must have predicted every id.
    if (!compare_path.empty()) {
        std::map<std::string, hiss::Label> gold_by_id;
        for (const auto& claim : golds) gold_by_id.emplace(claim.id, *claim.gold);

        auto read_full = [&](const std::filesystem::path& path) {
            std::map<std::string, hiss::Label> out;
            for (const auto& [id, label] : hiss::read_predictions(path)) {
                hiss::require(label.has_value(), ErrorCode::precondition,
                              "abstention for '" + id + "' cannot enter the paired test");
                out.emplace(id, hiss::make_label(scheme, *label));
            }
            return out;
        };
        auto a = read_full(predictions_path);
        auto b = read_full(compare_path);
        std::vector<hiss::Label> preds_a, preds_b, gold_vec;
        for (const auto& [id, label] : a) {
            auto other = b.find(id);
            auto gold = gold_by_id.find(id);
            hiss::require(other != b.end(), ErrorCode::unknown_id,
                          "'" + id + "' missing from " + compare_path);
            hiss::require(gold != gold_by_id.end(), ErrorCode::unknown_id,
                          "prediction for unknown id '" + id + "'");
            preds_a.push_back(label);
            preds_b.push_back(other->second);
            gold_vec.push_back(gold->second);
        }
        double p = hiss::paired_permutation_test(preds_a, preds_b, gold_vec, scheme,
                                                 iterations, opts.seed);
        char line[96];
        std::snprintf(line, sizeof(line), "permutation p-value (macro F1, two-sided): %.6f\n", p);
        buffer << line;
    }
    write_text_output(buffer.str(), opts.out_path);
    return 0;
}

int cmd_ablate(const CommonOptions& opts, const DatasetOptions& data,
               const std::string& grid_csv, const std::string& out_dir) {
    std::vector<std::string> grid;
    std::stringstream ss(grid_csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (!token.empty()) grid.push_back(token);
    }
    if (grid.empty()) grid.push_back("default");

    std::filesystem::create_directories(out_dir);
    auto base = build_run_config(opts);
    const auto& scheme = base.scheme;
    auto claims = load_dataset(data, scheme);
    auto demos = hiss::load_demo_file(asset_file(opts, "hiss"));

    for (const auto& name : grid) {
        hiss::RunConfig config = base;
        if (name == "default") {
            // base as-is
        } else if (name == "no-decompose") {
            config.decompose = false;
        } else if (name == "no-stepwise") {
            config.step_by_step = false;
        } else if (name == "search=never") {
            config.search_policy = hiss::SearchPolicy::never;
        } else if (name == "search=always") {
            config.search_policy = hiss::SearchPolicy::always;
        } else {
            hiss::fail(ErrorCode::precondition, "unknown ablation '" + name + "'");
        }

        // Fresh backend per configuration; cache file and fixture are shared.
        auto backend = build_backend(opts);
        auto cache = build_cache(opts);
        auto engine = build_engine(opts);

        std::string slug = name;
        for (char& c : slug) {
            if (c == '=' || c == ' ') c = '-';
        }
        hiss::BatchOptions options;
        options.jobs = opts.jobs;
        options.traces_path = std::filesystem::path(out_dir) / (slug + ".traces.jsonl");
        options.predictions_path =
            std::filesystem::path(out_dir) / (slug + ".predictions.tsv");

        auto summary = hiss::run_batch(claims, hiss::Method::hiss, config, demos, *backend,
                                       cache, engine.get(), options, &std::cerr);

        auto report = evaluate_predictions(options.predictions_path, claims, scheme, nullptr);
        auto format = hiss::report_format_from_string(opts.format);
        hiss::require(format.has_value(), ErrorCode::precondition,
                      "unknown format '" + opts.format + "'");
        std::string ext = opts.format == "text" ? "txt" : opts.format;
        hiss::emit_report(report, *format,
                          std::filesystem::path(out_dir) / (slug + ".report." + ext));

        std::cout << slug << ": completed=" << summary.completed
                  << " failed=" << summary.failed << " questions=" << summary.stats.questions
                  << " confident=" << summary.stats.confident
                  << " searched=" << summary.stats.searched << " macro_f1=" << report.macro_f1
                  << "\n";
    }
    return 0;
}

int cmd_cache(const CommonOptions& opts, const std::string& action, const std::string& query) {
    hiss::require(!opts.cache_path.empty(), ErrorCode::precondition, "--cache is required");
    auto cache = hiss::SearchCache::import_file(opts.cache_path);
    if (action == "stats") {
        std::cout << "entries=" << cache.size() << "\n";
        return 0;
    }
    if (action == "lookup") {
        hiss::require(!query.empty(), ErrorCode::precondition, "--query is required");
        auto hits = cache.peek(query);
        hiss::require(hits.has_value(), ErrorCode::frozen_cache_miss,
                      "no entry for '" + hiss::normalize_query(query) + "'");
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& hit : *hits) {
            arr.push_back(nlohmann::ordered_json{
                {"url", hit.url}, {"title", hit.title}, {"snippet", hit.snippet}});
        }
        std::cout << arr.dump(2) << "\n";
        return 0;
    }
    if (action == "rewrite") {
        hiss::require(!opts.out_path.empty(), ErrorCode::precondition, "--out is required");
        cache.export_file(opts.out_path);
        std::cout << "entries=" << cache.size() << "\n";
        return 0;
    }
    hiss::fail(ErrorCode::precondition, "unknown cache action '" + action + "'");
}

int cmd_demos(const CommonOptions& opts, const std::string& action,
              const DatasetOptions& data) {
    if (action == "show") {
        auto demos = hiss::load_demo_file(asset_file(opts, opts.method));
        std::cout << "asset: " << demos.asset_id() << " (" << demos.demos.size()
                  << " demos)\n\n";
        std::cout << hiss::join_demos(demos, static_cast<int>(demos.demos.size())) << "\n";
        return 0;
    }
    if (action == "select") {
        const auto& scheme = resolve_scheme(opts.scheme_name);
        auto pool = load_dataset(data, scheme);
        auto selection =
            hiss::select_demos(pool, static_cast<std::size_t>(opts.shot_count), opts.seed);
        nlohmann::ordered_json j;
        j["seed"] = selection.seed;
        j["ids"] = selection.ids;
        nlohmann::ordered_json claims = nlohmann::ordered_json::array();
        for (const auto& claim : selection.demos) {
            claims.push_back(nlohmann::ordered_json{
                {"id", claim.id},
                {"text", claim.text},
                {"gold", claim.gold ? nlohmann::ordered_json(claim.gold->value)
                                    : nlohmann::ordered_json(nullptr)}});
        }
        j["claims"] = std::move(claims);
        write_text_output(j.dump(2) + "\n", opts.out_path);
        return 0;
    }
    hiss::fail(ErrorCode::precondition, "unknown demos action '" + action + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hierarchical step-by-step news-claim verification"};
    app.require_subcommand(1);

    CommonOptions opts;
    DatasetOptions data;
    BatchPaths paths;
    std::string claim_text;
    std::string claim_id = "cli-claim";
    std::string predictions_path;
    std::string compare_path;
    int iterations = 10000;
    std::string grid_csv;
    std::string out_dir = "ablation-out";
    std::string action;
    std::string query;

    auto* verify = app.add_subcommand("verify", "verify a single claim");
    add_common_options(verify, opts, true);
    verify->add_option("claim", claim_text, "claim text")->required();
    verify->add_option("--id", claim_id, "claim id for the trace");

    auto* batch = app.add_subcommand("batch", "verify a dataset");
    add_common_options(batch, opts, true);
    add_dataset_options(batch, data);
    batch->add_option("--traces-out", paths.traces, "traces output (jsonl)");
    batch->add_option("--predictions-out", paths.predictions, "predictions output (tsv)");
    batch->add_flag("--resume", paths.resume, "skip ids already in the predictions file");

    auto* eval = app.add_subcommand("eval", "score predictions against gold labels");
    add_common_options(eval, opts, false);
    add_dataset_options(eval, data);
    eval->add_option("--predictions", predictions_path, "predictions tsv")->required();
    eval->add_option("--compare", compare_path,
                     "second predictions tsv for a paired permutation test");
    eval->add_option("--iterations", iterations, "permutation iterations (default 10000)");

    auto* ablate = app.add_subcommand("ablate", "run ablation configurations");
    add_common_options(ablate, opts, false);
    add_dataset_options(ablate, data);
    ablate->add_option("--grid", grid_csv,
                       "comma list of: default, no-decompose, no-stepwise, search=never, "
                       "search=always");
    ablate->add_option("--out-dir", out_dir, "per-config output directory");

    auto* cache_cmd = app.add_subcommand("cache", "inspect search cache files");
    add_common_options(cache_cmd, opts, false);
    cache_cmd->add_option("action", action, "stats, lookup or rewrite")->required();
    cache_cmd->add_option("--query", query, "query for lookup");

    auto* demos_cmd = app.add_subcommand("demos", "show or select demonstrations");
    add_common_options(demos_cmd, opts, true);
    demos_cmd->add_option("action", action, "show or select")->required();
    demos_cmd->add_option("--dataset", data.dataset, "liar, rawfc or jsonl");
    demos_cmd->add_option("--data-path", data.data_path, "dataset file or directory");
    demos_cmd->add_option("--split", data.split, "train, val or test");

    CLI11_PARSE(app, argc, argv);

    try {
        const CLI::App* active = app.get_subcommands().front();
        load_config_file(opts, *active);
        if (verify->parsed()) return cmd_verify(opts, claim_text, claim_id);
        if (batch->parsed()) return cmd_batch(opts, data, paths);
        if (eval->parsed()) return cmd_eval(opts, data, predictions_path, compare_path, iterations);
        if (ablate->parsed()) return cmd_ablate(opts, data, grid_csv, out_dir);
        if (cache_cmd->parsed()) return cmd_cache(opts, action, query);
        if (demos_cmd->parsed()) return cmd_demos(opts, action, data);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
