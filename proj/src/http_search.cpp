#include "hiss/http_search.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "hiss/errors.hpp"

namespace hiss {

std::vector<SearchHit> HttpSearchEngine::parse_hits(const std::string& body) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::search_unavailable, std::string("unparseable search reply: ") + e.what());
    }

    const nlohmann::json* arr = nullptr;
    if (j.is_array()) {
        arr = &j;
    } else if (j.contains("organic_results") && j.at("organic_results").is_array()) {
        arr = &j.at("organic_results");
    } else if (j.contains("results") && j.at("results").is_array()) {
        arr = &j.at("results");
    } else {
        fail(ErrorCode::search_unavailable, "search reply carries no result array");
    }

    std::vector<SearchHit> hits;
    for (const auto& item : *arr) {
        if (!item.is_object()) continue;
        SearchHit hit;
        hit.url = item.value("url", item.value("link", std::string{}));
        hit.title = item.value("title", std::string{});
        hit.snippet = item.value("snippet", item.value("description", std::string{}));
        if (!hit.url.empty()) hits.push_back(std::move(hit));
    }
    return hits;
}

std::vector<SearchHit> HttpSearchEngine::search(const std::string& query) {
    const std::string& url = config_.endpoint;
    std::size_t scheme_end = url.find("://");
    require(scheme_end != std::string::npos, ErrorCode::precondition,
            "search endpoint must be a full URL: " + url);
    std::size_t path_start = url.find('/', scheme_end + 3);
    std::string scheme_host = path_start == std::string::npos ? url : url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(scheme_host);
    client.set_read_timeout(config_.timeout_ms / 1000, (config_.timeout_ms % 1000) * 1000);

    httplib::Params params{{config_.query_param, query},
                           {"num", std::to_string(config_.fetch_depth)}};
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key != nullptr && *key) {
        params.emplace("api_key", key);
    }

    auto result = client.Get(path, params, httplib::Headers{});
    if (!result) {
        fail(ErrorCode::search_unavailable,
             "no response from " + config_.endpoint + " (" + httplib::to_string(result.error()) + ")");
    }
    if (result->status < 200 || result->status >= 300) {
        fail(ErrorCode::search_unavailable,
             "search engine returned status " + std::to_string(result->status));
    }
    return parse_hits(result->body);
}

}  // namespace hiss
