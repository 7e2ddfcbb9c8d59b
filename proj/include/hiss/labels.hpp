#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hiss {

/// An ordered veracity label set. Labels are stored lowercase and compared
/// case-insensitively; the order is stable and drives confusion-matrix axes
/// and the "among a, b, and c" sentence in prompts.
struct LabelScheme {
    std::string name;
    std::vector<std::string> labels;

    bool contains(std::string_view value) const;
    std::size_t index_of(std::string_view value) const;  // labels.size() when absent
    std::size_t size() const { return labels.size(); }

    bool operator==(const LabelScheme&) const = default;
};

/// One member of a scheme. `scheme` holds the scheme name so labels stay
/// plain value objects.
struct Label {
    std::string scheme;
    std::string value;

    bool operator==(const Label&) const = default;
};

LabelScheme make_scheme(std::string name, std::vector<std::string> labels);

Label make_label(const LabelScheme& scheme, std::string_view value);

const LabelScheme& liar_scheme();
const LabelScheme& rawfc_scheme();
const LabelScheme* find_builtin_scheme(std::string_view name);

/// "pants-fire, false, ..., and true" — the exact phrasing demo prompts use.
std::string label_set_sentence(const LabelScheme& scheme);

/// The one label matcher shared by every verdict parser: the longest scheme
/// label contained (case-insensitively) in `tail`. Longest-match keeps
/// "mostly-true" from being read as "true".
std::optional<std::string> longest_label_match(std::string_view tail, const LabelScheme& scheme);

using LabelMatcher = std::optional<std::string> (*)(std::string_view, const LabelScheme&);

/// Identity hook for tests: every parser in this library must report the
/// same matcher.
LabelMatcher shared_label_matcher();

}  // namespace hiss
