#pragma once

#include <string>
#include <vector>

#include "hiss/search.hpp"

namespace hiss {

struct HttpSearchConfig {
    std::string endpoint = "http://localhost:8081/search";
    std::string api_key_env = "HISS_SEARCH_API_KEY";
    std::string query_param = "q";
    int fetch_depth = 10;  // raw results requested before filtering
    int timeout_ms = 30000;
};

/// Client for any JSON search API returning url/title/snippet triples. The
/// reply may be a top-level array or wrap the hits in "organic_results" or
/// "results"; "link" is accepted for "url" and "description" for "snippet".
class HttpSearchEngine : public SearchEngine {
public:
    explicit HttpSearchEngine(HttpSearchConfig config) : config_(std::move(config)) {}

    std::vector<SearchHit> search(const std::string& query) override;

    static std::vector<SearchHit> parse_hits(const std::string& body);

private:
    HttpSearchConfig config_;
};

}  // namespace hiss
