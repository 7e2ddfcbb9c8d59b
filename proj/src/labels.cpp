#include "hiss/labels.hpp"

#include "hiss/errors.hpp"
#include "hiss/text.hpp"

namespace hiss {

bool LabelScheme::contains(std::string_view value) const {
    return index_of(value) < labels.size();
}

std::size_t LabelScheme::index_of(std::string_view value) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (text::iequals(labels[i], value)) return i;
    }
    return labels.size();
}

LabelScheme make_scheme(std::string name, std::vector<std::string> labels) {
    require(!labels.empty(), ErrorCode::empty_scheme, "scheme '" + name + "' has no labels");
    LabelScheme scheme{std::move(name), {}};
    scheme.labels.reserve(labels.size());
    for (auto& raw : labels) {
        std::string lowered = text::to_lower(raw);
        require(lowered == std::string(text::trim(lowered)) && !lowered.empty(),
                ErrorCode::empty_scheme, "blank label in scheme '" + scheme.name + "'");
        for (const auto& existing : scheme.labels) {
            require(existing != lowered, ErrorCode::duplicate_label,
                    "label '" + lowered + "' repeats in scheme '" + scheme.name + "'");
        }
        scheme.labels.push_back(std::move(lowered));
    }
    return scheme;
}

Label make_label(const LabelScheme& scheme, std::string_view value) {
    std::size_t i = scheme.index_of(value);
    require(i < scheme.labels.size(), ErrorCode::label_not_in_scheme,
            "'" + std::string(value) + "' is not in scheme '" + scheme.name + "'");
    return Label{scheme.name, scheme.labels[i]};
}

const LabelScheme& liar_scheme() {
    static const LabelScheme scheme = make_scheme(
        "liar", {"pants-fire", "false", "barely-true", "half-true", "mostly-true", "true"});
    return scheme;
}

const LabelScheme& rawfc_scheme() {
    static const LabelScheme scheme = make_scheme("rawfc", {"true", "half", "false"});
    return scheme;
}

const LabelScheme* find_builtin_scheme(std::string_view name) {
    if (text::iequals(name, "liar")) return &liar_scheme();
    if (text::iequals(name, "rawfc")) return &rawfc_scheme();
    return nullptr;
}

std::string label_set_sentence(const LabelScheme& scheme) {
    const auto& ls = scheme.labels;
    if (ls.size() == 1) return ls[0];
    std::string out;
    for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
        out += ls[i];
        out += ", ";
    }
    out += "and " + ls.back();
    return out;
}

std::optional<std::string> longest_label_match(std::string_view tail, const LabelScheme& scheme) {
    const std::string* best = nullptr;
    for (const auto& label : scheme.labels) {
        if (!text::icontains(tail, label)) continue;
        if (best == nullptr || label.size() > best->size()) best = &label;
    }
    if (best == nullptr) return std::nullopt;
    return *best;
}

LabelMatcher shared_label_matcher() { return &longest_label_match; }

}  // namespace hiss
