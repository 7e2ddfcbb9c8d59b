#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hiss/labels.hpp"

namespace hiss {

/// Rows are gold labels, columns predictions, both in scheme order.
/// Abstentions (undecidable runs) count as a false negative for the gold
/// class and a false positive for no class; they are tracked per gold class.
struct ConfusionMatrix {
    LabelScheme scheme;
    std::vector<std::vector<long>> counts;
    std::vector<long> abstained;

    long total() const;
    long abstention_total() const;
};

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    bool operator==(const ClassMetrics&) const = default;
};

struct EvalReport {
    std::string scheme;
    std::vector<std::pair<std::string, ClassMetrics>> per_class;
    double macro_p = 0.0;
    double macro_r = 0.0;
    double macro_f1 = 0.0;
    long n = 0;
    long abstentions = 0;
    std::string config_fingerprint;

    bool operator==(const EvalReport&) const = default;
};

ConfusionMatrix confusion(const std::vector<Label>& preds, const std::vector<Label>& golds,
                          const LabelScheme& scheme);

/// Variant admitting abstentions (nullopt predictions).
ConfusionMatrix confusion_with_abstentions(const std::vector<std::optional<Label>>& preds,
                                           const std::vector<Label>& golds,
                                           const LabelScheme& scheme);

/// The harmonic-of-macro-averages convention: per-class P and R with
/// zero-denominator classes contributing zero, unweighted macro means, and
/// macro F1 = 2RP/(R+P).
EvalReport macro_metrics(const ConfusionMatrix& matrix);

double f1_from_pr(double precision, double recall);

/// Two-sided p-value for the macro-F1 difference under per-example
/// prediction swaps; deterministic given the seed.
double paired_permutation_test(const std::vector<Label>& preds_a,
                               const std::vector<Label>& preds_b,
                               const std::vector<Label>& golds, const LabelScheme& scheme,
                               int iterations, std::uint64_t seed);

enum class ReportFormat { json, csv, text };

std::optional<ReportFormat> report_format_from_string(std::string_view s);

void write_report(const EvalReport& report, ReportFormat format, std::ostream& out);
void emit_report(const EvalReport& report, ReportFormat format,
                 const std::filesystem::path& path);
EvalReport report_from_json_file(const std::filesystem::path& path);

}  // namespace hiss
