#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "gaknn/evaluate.hpp"
#include "gaknn/genetic.hpp"
#include "gaknn/textutil.hpp"

namespace gaknn {

inline constexpr int kReportFormatVersion = 1;

struct DatasetSummary {
    std::string name;
    std::size_t instances = 0;
    std::size_t attributes = 0;
};

/// One accuracy cell of the experiment grid.
struct ReportCell {
    Protocol protocol = Protocol::FullTraining;
    int k = 1;
    bool with_ga = false;
    double accuracy = 0.0;

    bool operator==(const ReportCell&) const = default;
};

/// Everything one experiment produces: the dataset shape, the genetic-search
/// summary, the attribute ranking, the selected mask, the accuracy grid over
/// protocol x K x {with,without} GA, and full provenance.
struct Report {
    int format_version = kReportFormatVersion;
    DatasetSummary dataset;
    std::vector<std::string> feature_names;

    // genetic search stage
    std::vector<GenerationRecord> ga_progress;
    std::size_t ga_evaluations = 0;
    AttributeRanking ranking;
    Chromosome selected_mask;
    bool prune_fallback = false;
    double with_ga_fitness = 0.0;     // wrapper estimate of the selected mask
    double without_ga_fitness = 0.0;  // wrapper estimate of the all-ones mask

    // evaluation stage
    std::vector<ReportCell> grid;
    std::vector<int> ks;
    int cv_folds = 0;
    bool strict_cv = false;

    // comparison row (first K, full-training protocol when it ran)
    Protocol comparison_protocol = Protocol::FullTraining;
    int comparison_k = 1;
    double comparison_with_ga = 0.0;
    double comparison_without_ga = 0.0;

    // provenance
    std::uint64_t master_seed = 0;
    GaConfig ga_cfg;
    KnnConfig knn_cfg;
    PrunePolicy prune_policy;
    /// The mask comes from one genetic-search run (fitness computed at the
    /// first K) and is reused across the whole K sweep.
    std::string mask_note = "mask from a single genetic-search run, reused across the K sweep";
};

namespace detail {

/// Two-decimal percentage with trailing zeros trimmed: 1.0 -> "100",
/// 0.788037 -> "78.8".
inline std::string percent(double accuracy) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", accuracy * 100.0);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

}  // namespace detail

/// Machine-readable form: one row per (dataset, protocol, K, mask kind).
/// Round-trips through parse_report_csv.
inline std::string emit_report_csv(const Report& r) {
    std::ostringstream os;
    os << "# gaknn report format_version=" << r.format_version << "\n";
    os << "dataset,protocol,k,mask_kind,mask,accuracy\n";
    for (const auto& cell : r.grid) {
        os << r.dataset.name << ',' << to_string(cell.protocol) << ',' << cell.k << ','
           << (cell.with_ga ? "with_ga" : "without_ga") << ','
           << (cell.with_ga ? r.selected_mask.to_string()
                            : Chromosome::all_ones(r.selected_mask.size()).to_string())
           << ',' << detail::format_double(cell.accuracy) << '\n';
    }
    return os.str();
}

/// Parses the grid back out of emit_report_csv output.
inline std::vector<ReportCell> parse_report_csv(const std::string& text) {
    std::vector<ReportCell> cells;
    std::istringstream is(text);
    std::string line;
    bool saw_header = false;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string_view trimmed = detail::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        if (!saw_header) {
            saw_header = true;  // column header
            continue;
        }
        const auto fields = detail::split_fields(trimmed);
        if (fields.size() != 6) throw SyntaxError(lineno, "expected 6 CSV fields");
        ReportCell cell;
        if (fields[1] == "full_training") {
            cell.protocol = Protocol::FullTraining;
        } else if (fields[1] == "cross_validation") {
            cell.protocol = Protocol::CrossValidation;
        } else {
            throw SyntaxError(lineno, "unknown protocol '" + fields[1] + "'");
        }
        try {
            cell.k = std::stoi(fields[2]);
        } catch (const std::exception&) {
            throw SyntaxError(lineno, "K column is not an integer: '" + fields[2] + "'");
        }
        cell.with_ga = fields[3] == "with_ga";
        const char* begin = fields[5].c_str();
        char* end = nullptr;
        cell.accuracy = std::strtod(begin, &end);
        if (end == begin) throw SyntaxError(lineno, "accuracy column is not a number");
        cells.push_back(cell);
    }
    return cells;
}

/// Human-readable form: dataset summary, genetic-search progress, attribute
/// ranking, one accuracy table per protocol and the with/without-GA
/// comparison row.
inline std::string emit_report_markdown(const Report& r) {
    std::ostringstream os;
    os << "# Experiment report: " << r.dataset.name << "\n\n";
    os << "format version: " << r.format_version << "\n\n";

    os << "## Dataset\n\n";
    os << "| name | instances | attributes |\n|---|---|---|\n";
    os << "| " << r.dataset.name << " | " << r.dataset.instances << " | " << r.dataset.attributes
       << " |\n\n";

    os << "## Genetic search\n\n";
    os << "| generation | best fitness | mean fitness | best mask |\n|---|---|---|---|\n";
    for (const auto& rec : r.ga_progress) {
        os << "| " << rec.generation << " | " << detail::format_double(rec.best_fitness) << " | "
           << detail::format_double(rec.mean_fitness) << " | " << rec.best.to_string() << " |\n";
    }
    os << "\nfitness evaluations: " << r.ga_evaluations << "\n\n";

    os << "## Attribute ranking\n\n";
    os << "| rank | attribute | score |\n|---|---|---|\n";
    for (std::size_t pos = 0; pos < r.ranking.order.size(); ++pos) {
        const std::size_t j = r.ranking.order[pos];
        const std::string& name = j < r.feature_names.size() ? r.feature_names[j] : "?";
        os << "| " << pos + 1 << " | " << name << " | "
           << detail::format_double(r.ranking.scores[j]) << " |\n";
    }
    os << "\nselected mask: " << r.selected_mask.to_string() << " ("
       << to_string(r.prune_policy.kind) << (r.prune_fallback ? ", degenerate fallback" : "")
       << ")\n";
    os << "selected attributes:";
    for (std::size_t j = 0; j < r.selected_mask.size(); ++j)
        if (r.selected_mask.test(j) && j < r.feature_names.size())
            os << ' ' << r.feature_names[j];
    os << "\n\n";
    os << "wrapper fitness estimate: with GA " << detail::percent(r.with_ga_fitness)
       << ", without GA " << detail::percent(r.without_ga_fitness) << "\n\n";

    for (Protocol protocol : {Protocol::FullTraining, Protocol::CrossValidation}) {
        bool any = false;
        for (const auto& cell : r.grid) any = any || cell.protocol == protocol;
        if (!any) continue;
        os << "## Accuracy, "
           << (protocol == Protocol::FullTraining
                   ? std::string("full training set")
                   : std::to_string(r.cv_folds) + "-fold cross validation")
           << "\n\n";
        os << "| mask |";
        for (int k : r.ks) os << " K=" << k << " |";
        os << "\n|---|";
        for (std::size_t i = 0; i < r.ks.size(); ++i) os << "---|";
        os << "\n";
        for (bool with_ga : {true, false}) {
            os << "| " << (with_ga ? "with GA" : "without GA") << " |";
            for (int k : r.ks) {
                for (const auto& cell : r.grid)
                    if (cell.protocol == protocol && cell.k == k && cell.with_ga == with_ga)
                        os << ' ' << detail::percent(cell.accuracy) << " |";
            }
            os << "\n";
        }
        os << "\n";
    }

    os << "## Comparison: with GA / without GA\n\n";
    os << "| dataset | accuracy without GA | accuracy with GA |\n|---|---|---|\n";
    os << "| " << r.dataset.name << " | " << detail::percent(r.comparison_without_ga) << " | "
       << detail::percent(r.comparison_with_ga) << " |\n";
    os << "\n(" << to_string(r.comparison_protocol) << ", K=" << r.comparison_k << ")\n\n";

    os << "## Provenance\n\n";
    os << "```\n";
    os << "master_seed=" << r.master_seed << "\n";
    os << "knn.weighting=" << to_string(r.knn_cfg.weighting) << "\n";
    os << "knn.missing=" << to_string(r.knn_cfg.missing) << "\n";
    os << "knn.normalization=" << to_string(r.knn_cfg.normalization) << "\n";
    os << "ga.crossover_prob=" << detail::format_double(r.ga_cfg.crossover_prob) << "\n";
    os << "ga.mutation_prob=" << detail::format_double(r.ga_cfg.mutation_prob) << "\n";
    os << "ga.population_size=" << r.ga_cfg.population_size << "\n";
    os << "ga.max_generations=" << r.ga_cfg.max_generations << "\n";
    os << "ga.report_frequency=" << r.ga_cfg.report_frequency << "\n";
    os << "ga.seed=" << r.ga_cfg.seed << "\n";
    os << "ga.selection=" << to_string(r.ga_cfg.selection) << "\n";
    os << "ga.crossover=" << to_string(r.ga_cfg.crossover) << "\n";
    os << "ga.elitism=" << r.ga_cfg.elitism_count << "\n";
    os << "prune.policy=" << to_string(r.prune_policy.kind) << "\n";
    os << "cv.folds=" << r.cv_folds << "\n";
    os << "strict_cv=" << (r.strict_cv ? "true" : "false") << "\n";
    os << "note=" << r.mask_note << "\n";
    os << "```\n";
    return os.str();
}

enum class ReportFormat { Markdown, Csv };

inline std::string emit_report(const Report& r, ReportFormat format) {
    return format == ReportFormat::Markdown ? emit_report_markdown(r) : emit_report_csv(r);
}

/// FNV-1a hash of the report's CSV form; report file names embed it so
/// identical experiments produce identical names with no timestamps.
inline std::string report_content_hash(const Report& r) {
    const std::string csv = emit_report_csv(r);
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : csv) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(12, '0');
    for (int i = 0; i < 12; ++i) out[i] = hex[(h >> (60 - 4 * i)) & 0xF];
    return out;
}

}  // namespace gaknn
