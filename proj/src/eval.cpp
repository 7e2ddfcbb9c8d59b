#include "hiss/eval.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>

#include <json.hpp>

#include "hiss/errors.hpp"

namespace hiss {

long ConfusionMatrix::total() const {
    long sum = 0;
    for (const auto& row : counts)
        for (long c : row) sum += c;
    return sum + abstention_total();
}

long ConfusionMatrix::abstention_total() const {
    long sum = 0;
    for (long a : abstained) sum += a;
    return sum;
}

ConfusionMatrix confusion_with_abstentions(const std::vector<std::optional<Label>>& preds,
                                           const std::vector<Label>& golds,
                                           const LabelScheme& scheme) {
    require(preds.size() == golds.size(), ErrorCode::length_mismatch,
            std::to_string(preds.size()) + " predictions vs " + std::to_string(golds.size()) +
                " golds");
    ConfusionMatrix matrix;
    matrix.scheme = scheme;
    matrix.counts.assign(scheme.size(), std::vector<long>(scheme.size(), 0));
    matrix.abstained.assign(scheme.size(), 0);

    for (std::size_t i = 0; i < golds.size(); ++i) {
        std::size_t g = scheme.index_of(golds[i].value);
        require(g < scheme.size(), ErrorCode::label_not_in_scheme,
                "gold '" + golds[i].value + "'");
        if (!preds[i].has_value()) {
            matrix.abstained[g] += 1;
            continue;
        }
        std::size_t p = scheme.index_of(preds[i]->value);
        require(p < scheme.size(), ErrorCode::label_not_in_scheme,
                "prediction '" + preds[i]->value + "'");
        matrix.counts[g][p] += 1;
    }
    return matrix;
}

ConfusionMatrix confusion(const std::vector<Label>& preds, const std::vector<Label>& golds,
                          const LabelScheme& scheme) {
    std::vector<std::optional<Label>> wrapped(preds.begin(), preds.end());
    return confusion_with_abstentions(wrapped, golds, scheme);
}

double f1_from_pr(double precision, double recall) {
    double denom = precision + recall;
    if (denom <= 0.0) return 0.0;
    return 2.0 * recall * precision / denom;
}

EvalReport macro_metrics(const ConfusionMatrix& matrix) {
    require(matrix.total() > 0, ErrorCode::empty_matrix, "no scored examples");

    const std::size_t n = matrix.scheme.size();
    EvalReport report;
    report.scheme = matrix.scheme.name;
    report.n = matrix.total();
    report.abstentions = matrix.abstention_total();

    double sum_p = 0.0;
    double sum_r = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        long tp = matrix.counts[c][c];
        long fp = 0;
        long fn = matrix.abstained[c];
        for (std::size_t g = 0; g < n; ++g) {
            if (g != c) fp += matrix.counts[g][c];
        }
        for (std::size_t p = 0; p < n; ++p) {
            if (p != c) fn += matrix.counts[c][p];
        }
        ClassMetrics metrics;
        metrics.precision = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
        metrics.recall = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
        metrics.f1 = f1_from_pr(metrics.precision, metrics.recall);
        sum_p += metrics.precision;
        sum_r += metrics.recall;
        report.per_class.emplace_back(matrix.scheme.labels[c], metrics);
    }
    report.macro_p = sum_p / static_cast<double>(n);
    report.macro_r = sum_r / static_cast<double>(n);
    report.macro_f1 = f1_from_pr(report.macro_p, report.macro_r);
    return report;
}

namespace {

double macro_f1_of(const std::vector<Label>& preds, const std::vector<Label>& golds,
                   const LabelScheme& scheme) {
    return macro_metrics(confusion(preds, golds, scheme)).macro_f1;
}

}  // namespace

double paired_permutation_test(const std::vector<Label>& preds_a,
                               const std::vector<Label>& preds_b,
                               const std::vector<Label>& golds, const LabelScheme& scheme,
                               int iterations, std::uint64_t seed) {
    require(preds_a.size() == preds_b.size() && preds_a.size() == golds.size(),
            ErrorCode::length_mismatch, "prediction/gold lengths differ");
    require(iterations >= 1000, ErrorCode::precondition, "iterations must be >= 1000");
    require(!golds.empty(), ErrorCode::precondition, "empty prediction set");

    const double observed =
        std::fabs(macro_f1_of(preds_a, golds, scheme) - macro_f1_of(preds_b, golds, scheme));

    std::mt19937_64 rng(seed);
    std::vector<Label> a = preds_a;
    std::vector<Label> b = preds_b;
    long at_least = 0;
    for (int it = 0; it < iterations; ++it) {
        a = preds_a;
        b = preds_b;
        std::uint64_t bits = 0;
        int remaining = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (remaining == 0) {
                bits = rng();
                remaining = 64;
            }
            if (bits & 1) std::swap(a[i], b[i]);
            bits >>= 1;
            --remaining;
        }
        double diff = std::fabs(macro_f1_of(a, golds, scheme) - macro_f1_of(b, golds, scheme));
        if (diff >= observed - 1e-12) ++at_least;
    }
    return static_cast<double>(1 + at_least) / static_cast<double>(1 + iterations);
}

std::optional<ReportFormat> report_format_from_string(std::string_view s) {
    if (s == "json") return ReportFormat::json;
    if (s == "csv") return ReportFormat::csv;
    if (s == "text") return ReportFormat::text;
    return std::nullopt;
}

namespace {

std::string pct(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", value * 100.0);
    return buf;
}

nlohmann::ordered_json report_to_json(const EvalReport& report) {
    nlohmann::ordered_json per_class = nlohmann::ordered_json::object();
    for (const auto& [label, m] : report.per_class) {
        per_class[label] = nlohmann::ordered_json{
            {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
    }
    return nlohmann::ordered_json{
        {"scheme", report.scheme},
        {"n", report.n},
        {"abstentions", report.abstentions},
        {"per_class", std::move(per_class)},
        {"macro_p", report.macro_p},
        {"macro_r", report.macro_r},
        {"macro_f1", report.macro_f1},
        {"config_fingerprint", report.config_fingerprint},
    };
}

}  // namespace

void write_report(const EvalReport& report, ReportFormat format, std::ostream& out) {
    switch (format) {
        case ReportFormat::text:
            out << "P " << pct(report.macro_p) << "  R " << pct(report.macro_r) << "  F1 "
                << pct(report.macro_f1) << "\n";
            out << "n " << report.n << "  abstentions " << report.abstentions << "\n";
            for (const auto& [label, m] : report.per_class) {
                out << "  " << label << ": P " << pct(m.precision) << "  R " << pct(m.recall)
                    << "  F1 " << pct(m.f1) << "\n";
            }
            break;
        case ReportFormat::csv:
            out << "class,precision,recall,f1\n";
            for (const auto& [label, m] : report.per_class) {
                out << label << "," << pct(m.precision) << "," << pct(m.recall) << ","
                    << pct(m.f1) << "\n";
            }
            out << "macro," << pct(report.macro_p) << "," << pct(report.macro_r) << ","
                << pct(report.macro_f1) << "\n";
            break;
        case ReportFormat::json:
            out << report_to_json(report).dump(2) << "\n";
            break;
    }
}

void emit_report(const EvalReport& report, ReportFormat format,
                 const std::filesystem::path& path) {
    std::ofstream out(path);
    require(out.good(), ErrorCode::io_failure, "cannot write " + path.string());
    write_report(report, format, out);
    out.flush();
    require(out.good(), ErrorCode::io_failure, "short write to " + path.string());
}

EvalReport report_from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::io_failure, "cannot open " + path.string());
    nlohmann::ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::malformed_line, path.string() + ": " + e.what());
    }
    EvalReport report;
    report.scheme = j.at("scheme").get<std::string>();
    report.n = j.at("n").get<long>();
    report.abstentions = j.at("abstentions").get<long>();
    for (const auto& [label, m] : j.at("per_class").items()) {
        report.per_class.emplace_back(
            label, ClassMetrics{m.at("precision").get<double>(), m.at("recall").get<double>(),
                                m.at("f1").get<double>()});
    }
    report.macro_p = j.at("macro_p").get<double>();
    report.macro_r = j.at("macro_r").get<double>();
    report.macro_f1 = j.at("macro_f1").get<double>();
    report.config_fingerprint = j.at("config_fingerprint").get<std::string>();
    return report;
}

}  // namespace hiss
