#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hiss/claim.hpp"
#include "hiss/labels.hpp"

namespace hiss {

enum class Split { train, val, test };

const char* to_string(Split split);
std::optional<Split> split_from_string(std::string_view s);

/// Six-class TSV corpus: id, label, statement, then metadata columns
/// (subject, speaker, job_title, state, party, credit counts, context).
/// Extra trailing columns are tolerated. `path` may be the split file itself
/// or a directory holding train.tsv / valid.tsv / test.tsv.
std::vector<Claim> load_liar(const std::filesystem::path& path, Split split);

/// Field-name hook for the three-class JSON corpus; releases disagree on key
/// names, so each logical field accepts a list of candidates.
struct RawfcFieldMap {
    std::vector<std::string> id_keys = {"event_id", "id", "claim_id"};
    std::vector<std::string> claim_keys = {"claim", "claim_text", "text"};
    std::vector<std::string> label_keys = {"label"};
};

/// Three-class corpus: a directory of per-claim JSON records. `path` may be
/// the split directory or its parent containing train/ val/ test/.
std::vector<Claim> load_rawfc(const std::filesystem::path& path, Split split,
                              const RawfcFieldMap& fields = {});

/// Canonical interchange: one {"id","text","gold","metadata"} object per line.
std::vector<Claim> import_jsonl(const std::filesystem::path& path, const LabelScheme& scheme);
void export_jsonl(const std::vector<Claim>& claims, const std::filesystem::path& path);

struct DemoSelection {
    std::vector<Claim> demos;
    std::vector<std::string> ids;
    std::uint64_t seed = 0;
};

/// Deterministic k-sample of the training pool; the same seed always yields
/// the same selection, and the picked ids are recorded alongside.
DemoSelection select_demos(const std::vector<Claim>& train_claims, std::size_t k,
                           std::uint64_t seed);

}  // namespace hiss
