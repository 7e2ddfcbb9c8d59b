#include "hiss/search.hpp"

#include <fstream>

#include <json.hpp>

#include "hiss/errors.hpp"
#include "hiss/text.hpp"

namespace hiss {

std::string normalize_query(std::string_view query) {
    return text::to_lower(text::collapse_whitespace(query));
}

std::string normalize_url(std::string_view url) {
    std::string lowered = text::to_lower(url);
    lowered = text::replace_all(std::move(lowered), "%20", "");
    lowered = text::replace_all(std::move(lowered), "-", "");
    lowered = text::replace_all(std::move(lowered), "_", "");
    return lowered;
}

std::vector<SearchHit> filter_fact_check(std::vector<SearchHit> hits,
                                         const FilterConfig& config) {
    std::vector<SearchHit> kept;
    kept.reserve(hits.size());
    for (auto& hit : hits) {
        const std::string raw = text::to_lower(hit.url);
        const std::string normalized = normalize_url(hit.url);
        bool banned = false;
        for (const auto& keyword : config.banned_keywords) {
            if (raw.find(keyword) != std::string::npos ||
                normalized.find(normalize_url(keyword)) != std::string::npos) {
                banned = true;
                break;
            }
        }
        if (!banned) kept.push_back(std::move(hit));
    }
    return kept;
}

std::optional<EvidenceSnippet> select_top_snippet(const std::vector<SearchHit>& hits,
                                                  const std::string& query,
                                                  std::size_t max_chars) {
    for (const auto& hit : hits) {
        if (hit.snippet.empty()) continue;
        std::string snippet = hit.snippet;
        if (snippet.size() > max_chars) snippet.resize(max_chars);
        return EvidenceSnippet{std::move(snippet), hit.url, query};
    }
    return std::nullopt;
}

SearchCache SearchCache::import_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::io_failure, "cannot open cache file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::malformed_cache_file, path.string() + ": " + e.what());
    }
    require(j.is_object(), ErrorCode::malformed_cache_file,
            path.string() + ": top level must be an object");

    SearchCache cache;
    for (const auto& [query, hits_json] : j.items()) {
        require(hits_json.is_array(), ErrorCode::malformed_cache_file,
                "entry for '" + query + "' must be an array");
        std::vector<SearchHit> hits;
        for (const auto& h : hits_json) {
            if (!h.is_object() || !h.contains("url")) {
                fail(ErrorCode::malformed_cache_file, "hit entries need at least a url");
            }
            hits.push_back(SearchHit{h.at("url").get<std::string>(),
                                     h.value("title", std::string{}),
                                     h.value("snippet", std::string{})});
        }
        cache.entries_[normalize_query(query)] = std::move(hits);
    }
    return cache;
}

std::string SearchCache::export_string() const {
    std::lock_guard<std::mutex> lock(mutex_);
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [query, hits] : entries_) {  // std::map: sorted, canonical
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& hit : hits) {
            arr.push_back(nlohmann::ordered_json{
                {"url", hit.url}, {"title", hit.title}, {"snippet", hit.snippet}});
        }
        j[query] = std::move(arr);
    }
    return j.dump(2) + "\n";
}

void SearchCache::export_file(const std::filesystem::path& path) const {
    std::string payload = export_string();
    std::ofstream out(path);
    require(out.good(), ErrorCode::io_failure, "cannot write cache file " + path.string());
    out << payload;
    require(out.good(), ErrorCode::io_failure, "short write to " + path.string());
}

bool SearchCache::frozen() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return frozen_;
}

void SearchCache::freeze() {
    std::lock_guard<std::mutex> lock(mutex_);
    frozen_ = true;
}

std::size_t SearchCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.size();
}

std::optional<std::vector<SearchHit>> SearchCache::peek(const std::string& query) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(normalize_query(query));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void SearchCache::insert(const std::string& query, std::vector<SearchHit> hits) {
    std::lock_guard<std::mutex> lock(mutex_);
    entries_[normalize_query(query)] = std::move(hits);
}

std::vector<std::string> SearchCache::keys() const {
    std::lock_guard<std::mutex> lock(mutex_);
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [k, v] : entries_) out.push_back(k);
    return out;
}

std::vector<SearchHit> SearchCache::lookup_or_fetch(const std::string& query,
                                                    SearchEngine* engine) {
    require(!text::trim(query).empty(), ErrorCode::precondition, "empty search query");
    const std::string key = normalize_query(query);

    std::unique_lock<std::mutex> lock(mutex_);
    for (;;) {
        auto it = entries_.find(key);
        if (it != entries_.end()) return it->second;
        if (frozen_) {
            fail(ErrorCode::frozen_cache_miss, "frozen cache has no entry for '" + key + "'");
        }
        auto flight = in_flight_.find(key);
        if (flight == in_flight_.end()) break;
        // Someone else is fetching this key; wait for them.
        ready_.wait(lock, [&] {
            return entries_.count(key) > 0 || in_flight_.count(key) == 0;
        });
    }

    require(engine != nullptr, ErrorCode::search_unavailable,
            "cache miss for '" + key + "' and no live engine configured");
    in_flight_[key] = true;
    lock.unlock();

    std::vector<SearchHit> hits;
    try {
        hits = engine->search(query);
    } catch (...) {
        lock.lock();
        in_flight_.erase(key);
        ready_.notify_all();
        throw;
    }

    lock.lock();
    in_flight_.erase(key);
    auto [it, inserted] = entries_.emplace(key, std::move(hits));
    ready_.notify_all();
    return it->second;
}

std::vector<SearchHit> search(const std::string& query, SearchCache& cache,
                              SearchEngine* engine) {
    return cache.lookup_or_fetch(query, engine);
}

}  // namespace hiss
