#pragma once

#include <string>

namespace hiss {

/// A snippet that survived the fact-check filter, ready to be injected into
/// a prompt. `query` is the probing question that produced it.
struct EvidenceSnippet {
    std::string text;
    std::string source_url;
    std::string query;

    bool operator==(const EvidenceSnippet&) const = default;
};

}  // namespace hiss
