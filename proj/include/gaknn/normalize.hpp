#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gaknn/dataset.hpp"
#include "gaknn/errors.hpp"

namespace gaknn {

enum class NormMethod { None, ZScore, MinMax };

inline const char* to_string(NormMethod m) {
    switch (m) {
        case NormMethod::None: return "none";
        case NormMethod::ZScore: return "zscore";
        case NormMethod::MinMax: return "minmax";
    }
    return "?";
}

/// Fit-on-train / apply-anywhere scaling of numeric attributes.
///
/// ZScore maps x -> (x - mean) / stddev with the sample convention (n-1
/// divisor); MinMax maps x -> (x - min) / (max - min) clamped to [0, 1] so
/// out-of-range test values keep bounded distance contributions. Degenerate
/// attributes (constant, or fewer than two values) map every value to 0.
/// Nominal and missing cells pass through unchanged. A model only applies to
/// datasets whose schema fingerprint matches the one it was fitted on.
class NormalizationModel {
public:
    struct Stats {
        double a = 0.0;  // mean (ZScore) or min (MinMax)
        double b = 0.0;  // stddev (ZScore) or max (MinMax)
        bool degenerate = false;

        bool operator==(const Stats&) const = default;
    };

    static NormalizationModel fit(const Dataset& d, NormMethod method) {
        if (d.n_rows() == 0) throw EmptyInput("cannot fit a normalization model on no rows");
        NormalizationModel m;
        m.method_ = method;
        m.fingerprint_ = d.schema_fingerprint();
        m.stats_.resize(d.n_attributes());
        if (method == NormMethod::None) return m;

        for (std::size_t a = 0; a < d.n_attributes(); ++a) {
            if (!d.schema()[a].numeric()) continue;
            std::vector<double> xs;
            xs.reserve(d.n_rows());
            for (const auto& row : d.rows())
                if (!row[a].is_missing()) xs.push_back(row[a].num());

            Stats s;
            if (method == NormMethod::ZScore) {
                if (xs.size() < 2) {
                    s.degenerate = true;
                } else {
                    double mean = 0.0;
                    for (double x : xs) mean += x;
                    mean /= static_cast<double>(xs.size());
                    double ss = 0.0;
                    for (double x : xs) ss += (x - mean) * (x - mean);
                    const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
                    s.a = mean;
                    s.b = sd;
                    s.degenerate = sd == 0.0;
                }
            } else {
                if (xs.empty()) {
                    s.degenerate = true;
                } else {
                    double lo = xs[0], hi = xs[0];
                    for (double x : xs) {
                        lo = std::min(lo, x);
                        hi = std::max(hi, x);
                    }
                    s.a = lo;
                    s.b = hi;
                    s.degenerate = lo == hi;
                }
            }
            m.stats_[a] = s;
        }
        return m;
    }

    NormMethod method() const { return method_; }
    const std::string& fingerprint() const { return fingerprint_; }
    const std::optional<Stats>& stats(std::size_t attr) const { return stats_[attr]; }

    Value apply_value(std::size_t attr, const Value& v) const {
        if (method_ == NormMethod::None || v.is_missing() || !v.is_numeric()) return v;
        const auto& s = stats_[attr];
        if (!s) return v;
        if (s->degenerate) return Value::numeric(0.0);
        if (method_ == NormMethod::ZScore) return Value::numeric((v.num() - s->a) / s->b);
        const double scaled = (v.num() - s->a) / (s->b - s->a);
        return Value::numeric(std::min(std::max(scaled, 0.0), 1.0));
    }

    Row apply_row(const Row& r) const {
        if (r.size() != stats_.size())
            throw SchemaMismatch("row has " + std::to_string(r.size()) +
                                 " values, model was fitted on " + std::to_string(stats_.size()) +
                                 " attributes");
        Row out;
        out.reserve(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) out.push_back(apply_value(i, r[i]));
        return out;
    }

    Dataset apply(const Dataset& d) const {
        if (d.schema_fingerprint() != fingerprint_)
            throw SchemaMismatch("dataset schema differs from the one the model was fitted on");
        std::vector<Row> rows;
        rows.reserve(d.n_rows());
        for (const auto& r : d.rows()) rows.push_back(apply_row(r));
        return Dataset(d.name(), d.schema(), std::move(rows));
    }

    /// Plain-text key/value form for provenance logs.
    std::string serialize(const Dataset& fitted_on) const {
        std::ostringstream os;
        os << "method=" << to_string(method_) << '\n';
        for (std::size_t i = 0; i < stats_.size(); ++i) {
            if (!stats_[i]) continue;
            const char* ka = method_ == NormMethod::ZScore ? "mean" : "min";
            const char* kb = method_ == NormMethod::ZScore ? "stddev" : "max";
            const std::string& name = fitted_on.schema()[i].name;
            os << "attr." << name << '.' << ka << '=' << detail::format_double(stats_[i]->a)
               << '\n';
            os << "attr." << name << '.' << kb << '=' << detail::format_double(stats_[i]->b)
               << '\n';
            if (stats_[i]->degenerate) os << "attr." << name << ".degenerate=true\n";
        }
        return os.str();
    }

private:
    NormMethod method_ = NormMethod::None;
    std::string fingerprint_;
    std::vector<std::optional<Stats>> stats_;  // indexed by attribute; numeric attrs only
};

}  // namespace gaknn
