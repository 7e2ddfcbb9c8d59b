#include "hiss/datasets.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "hiss/errors.hpp"
#include "hiss/text.hpp"

namespace hiss {

const char* to_string(Split split) {
    switch (split) {
        case Split::train: return "train";
        case Split::val: return "val";
        case Split::test: return "test";
    }
    return "test";
}

std::optional<Split> split_from_string(std::string_view s) {
    if (s == "train") return Split::train;
    if (s == "val" || s == "valid" || s == "validation") return Split::val;
    if (s == "test") return Split::test;
    return std::nullopt;
}

namespace {

const char* liar_split_file(Split split) {
    switch (split) {
        case Split::train: return "train.tsv";
        case Split::val: return "valid.tsv";
        case Split::test: return "test.tsv";
    }
    return "test.tsv";
}

// Named metadata columns after id/label/statement in the published order.
const char* kLiarMetadataColumns[] = {
    "subject",          "speaker",           "job_title",
    "state",            "party",             "barely_true_counts",
    "false_counts",     "half_true_counts",  "mostly_true_counts",
    "pants_fire_counts", "context",
};

std::vector<std::string> split_tsv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, '\t')) cells.push_back(cell);
    return cells;
}

}  // namespace

std::vector<Claim> load_liar(const std::filesystem::path& path, Split split) {
    std::filesystem::path file = path;
    if (std::filesystem::is_directory(path)) file = path / liar_split_file(split);
    std::ifstream in(file);
    require(in.good(), ErrorCode::io_failure, "cannot open " + file.string());

    const LabelScheme& scheme = liar_scheme();
    std::vector<Claim> claims;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text::trim(line).empty()) continue;
        auto cells = split_tsv(line);
        require(cells.size() >= 3, ErrorCode::malformed_row,
                file.string() + " row " + std::to_string(row) + ": expected at least 3 columns");

        Claim claim;
        claim.id = cells[0];
        std::string label = text::to_lower(std::string(text::trim(cells[1])));
        require(scheme.contains(label), ErrorCode::unknown_label,
                file.string() + " row " + std::to_string(row) + ": label '" + label + "'");
        claim.gold = make_label(scheme, label);
        claim.text = std::string(text::trim(cells[2]));
        require(!claim.text.empty(), ErrorCode::malformed_row,
                file.string() + " row " + std::to_string(row) + ": empty statement");

        constexpr std::size_t n_meta = std::size(kLiarMetadataColumns);
        for (std::size_t i = 0; i < n_meta && i + 3 < cells.size(); ++i) {
            if (!cells[i + 3].empty()) claim.metadata[kLiarMetadataColumns[i]] = cells[i + 3];
        }
        claims.push_back(std::move(claim));
    }
    return claims;
}

namespace {

const nlohmann::json* find_key(const nlohmann::json& record,
                               const std::vector<std::string>& keys) {
    for (const auto& key : keys) {
        if (record.contains(key)) return &record.at(key);
    }
    return nullptr;
}

std::string json_as_string(const nlohmann::json& value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

}  // namespace

std::vector<Claim> load_rawfc(const std::filesystem::path& path, Split split,
                              const RawfcFieldMap& fields) {
    std::filesystem::path dir = path;
    if (std::filesystem::is_directory(path / to_string(split))) dir = path / to_string(split);
    require(std::filesystem::is_directory(dir), ErrorCode::io_failure,
            dir.string() + " is not a directory");

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    const LabelScheme& scheme = rawfc_scheme();
    std::vector<Claim> claims;
    for (const auto& file : files) {
        std::ifstream in(file);
        require(in.good(), ErrorCode::io_failure, "cannot open " + file.string());
        nlohmann::json record;
        try {
            in >> record;
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::malformed_record, file.string() + ": " + e.what());
        }
        require(record.is_object(), ErrorCode::malformed_record,
                file.string() + ": record must be an object");

        Claim claim;
        const nlohmann::json* id = find_key(record, fields.id_keys);
        claim.id = id != nullptr ? json_as_string(*id) : file.stem().string();

        const nlohmann::json* body = find_key(record, fields.claim_keys);
        require(body != nullptr && body->is_string(), ErrorCode::malformed_record,
                file.string() + ": missing claim text");
        claim.text = std::string(text::trim(body->get<std::string>()));
        require(!claim.text.empty(), ErrorCode::malformed_record,
                file.string() + ": empty claim text");

        const nlohmann::json* label = find_key(record, fields.label_keys);
        require(label != nullptr && label->is_string(), ErrorCode::malformed_record,
                file.string() + ": missing label");
        std::string value = text::to_lower(std::string(text::trim(label->get<std::string>())));
        require(scheme.contains(value), ErrorCode::unknown_label,
                file.string() + ": label '" + value + "'");
        claim.gold = make_label(scheme, value);
        claims.push_back(std::move(claim));
    }
    return claims;
}

std::vector<Claim> import_jsonl(const std::filesystem::path& path, const LabelScheme& scheme) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::io_failure, "cannot open " + path.string());
    std::vector<Claim> claims;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (text::trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::malformed_line,
                 path.string() + " line " + std::to_string(number) + ": " + e.what());
        }
        require(j.is_object() && j.contains("id") && j.contains("text"),
                ErrorCode::malformed_line,
                path.string() + " line " + std::to_string(number) + ": need id and text");
        Claim claim;
        claim.id = json_as_string(j.at("id"));
        claim.text = j.at("text").get<std::string>();
        if (j.contains("gold") && !j.at("gold").is_null()) {
            std::string gold = text::to_lower(j.at("gold").get<std::string>());
            require(scheme.contains(gold), ErrorCode::malformed_line,
                    path.string() + " line " + std::to_string(number) + ": gold '" + gold +
                        "' not in scheme '" + scheme.name + "'");
            claim.gold = make_label(scheme, gold);
        }
        if (j.contains("metadata") && j.at("metadata").is_object()) {
            claim.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
        }
        claims.push_back(std::move(claim));
    }
    return claims;
}

void export_jsonl(const std::vector<Claim>& claims, const std::filesystem::path& path) {
    std::ofstream out(path);
    require(out.good(), ErrorCode::io_failure, "cannot write " + path.string());
    for (const auto& claim : claims) {
        nlohmann::ordered_json j;
        j["id"] = claim.id;
        j["text"] = claim.text;
        j["gold"] = claim.gold ? nlohmann::ordered_json(claim.gold->value)
                               : nlohmann::ordered_json(nullptr);
        j["metadata"] = claim.metadata;
        out << j.dump() << "\n";
    }
    require(out.good(), ErrorCode::io_failure, "short write to " + path.string());
}

namespace {

// Unbiased bounded draw; std::uniform_int_distribution varies across
// implementations, this does not.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return draw % n;
}

}  // namespace

DemoSelection select_demos(const std::vector<Claim>& train_claims, std::size_t k,
                           std::uint64_t seed) {
    require(k <= train_claims.size(), ErrorCode::insufficient_pool,
            "asked for " + std::to_string(k) + " demos from a pool of " +
                std::to_string(train_claims.size()));
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> indices(train_claims.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;

    DemoSelection selection;
    selection.seed = seed;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(bounded(rng, indices.size() - i));
        std::swap(indices[i], indices[j]);
        selection.demos.push_back(train_claims[indices[i]]);
        selection.ids.push_back(train_claims[indices[i]].id);
    }
    return selection;
}

}  // namespace hiss
