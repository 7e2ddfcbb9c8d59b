#pragma once

#include <condition_variable>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hiss/evidence.hpp"

namespace hiss {

struct SearchHit {
    std::string url;
    std::string title;
    std::string snippet;

    bool operator==(const SearchHit&) const = default;
};

/// Pluggable search provider; implementations return url/title/snippet
/// triples in rank order.
class SearchEngine {
public:
    virtual ~SearchEngine() = default;
    virtual std::vector<SearchHit> search(const std::string& query) = 0;
};

/// Trim, collapse internal whitespace, lowercase. Idempotent; the sole cache
/// key form.
std::string normalize_query(std::string_view query);

/// Lowercases and collapses '-', '_' and '%20' to nothing, so
/// "Fact-Check" / "fact%20check" both surface the keyword.
std::string normalize_url(std::string_view url);

struct FilterConfig {
    std::vector<std::string> banned_keywords = {
        "fact check", "fact-check", "factcheck", "fact-checking", "factchecking"};
};

/// Drops hits whose URL carries a fact-checking keyword (checked on both the
/// raw lowercased URL and its collapsed normalization); survivor order is
/// preserved.
std::vector<SearchHit> filter_fact_check(std::vector<SearchHit> hits,
                                         const FilterConfig& config = {});

inline constexpr std::size_t kSnippetMaxChars = 600;

/// First hit with a non-empty snippet, truncated to `max_chars`; nullopt when
/// the list is exhausted.
std::optional<EvidenceSnippet> select_top_snippet(const std::vector<SearchHit>& hits,
                                                  const std::string& query,
                                                  std::size_t max_chars = kSnippetMaxChars);

/// Query -> hits map with freeze support. Reads are concurrent; a miss being
/// resolved holds a single-flight slot so duplicate in-flight lookups of the
/// same key wait instead of re-querying.
class SearchCache {
public:
    SearchCache() = default;

    // Movable for construction convenience; moves must happen before any
    // concurrent use (the sync primitives are not transferred).
    SearchCache(SearchCache&& other) noexcept
        : entries_(std::move(other.entries_)), frozen_(other.frozen_) {}
    SearchCache& operator=(SearchCache&& other) noexcept {
        entries_ = std::move(other.entries_);
        frozen_ = other.frozen_;
        return *this;
    }

    static SearchCache import_file(const std::filesystem::path& path);
    void export_file(const std::filesystem::path& path) const;
    std::string export_string() const;

    bool frozen() const;
    void freeze();

    std::size_t size() const;
    std::optional<std::vector<SearchHit>> peek(const std::string& query) const;
    void insert(const std::string& query, std::vector<SearchHit> hits);

    /// Cache hit returns stored hits; a miss queries `engine` (error when
    /// frozen or engine missing) and stores the result.
    std::vector<SearchHit> lookup_or_fetch(const std::string& query, SearchEngine* engine);

    std::vector<std::string> keys() const;

private:
    mutable std::mutex mutex_;
    std::condition_variable ready_;
    std::map<std::string, std::vector<SearchHit>> entries_;
    std::map<std::string, bool> in_flight_;
    bool frozen_ = false;
};

/// The full acquisition step: cache-aware search with the query taken
/// verbatim (normalization happens inside the cache key).
std::vector<SearchHit> search(const std::string& query, SearchCache& cache,
                              SearchEngine* engine);

}  // namespace hiss
