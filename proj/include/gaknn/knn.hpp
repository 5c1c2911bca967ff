#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gaknn/dataset.hpp"
#include "gaknn/errors.hpp"
#include "gaknn/normalize.hpp"

namespace gaknn {

enum class VoteWeighting { MajorityVote, InverseDistance };
enum class MissingPolicy { MeanImpute, MaxPenalty };

inline const char* to_string(VoteWeighting w) {
    return w == VoteWeighting::MajorityVote ? "majority" : "inverse_distance";
}
inline const char* to_string(MissingPolicy p) {
    return p == MissingPolicy::MeanImpute ? "mean_impute" : "max_penalty";
}

/// Inverse-distance vote weight is 1/(d + epsilon); the epsilon keeps weights
/// finite while letting an exact-match neighbor dominate any other.
inline constexpr double kInverseDistanceEpsilon = 1e-9;

struct KnnConfig {
    int k = 1;
    VoteWeighting weighting = VoteWeighting::MajorityVote;
    MissingPolicy missing = MissingPolicy::MeanImpute;
    NormMethod normalization = NormMethod::MinMax;

    void validate() const {
        if (k < 1) throw ConfigError("k must be >= 1, got " + std::to_string(k));
    }
};

struct Neighbor {
    std::size_t row;    ///< training row index
    double dist;        ///< non-negative
    std::size_t label;  ///< class category index
};

struct Prediction {
    std::size_t label;               ///< argmax vote weight; ties -> lower class index
    std::vector<double> votes;       ///< per-class vote weight
    std::vector<Neighbor> neighbors; ///< the k neighbors used, sorted by (dist, row)
};

/// Mixed-type distance: Euclidean over numeric attributes combined with the
/// 0/1 overlap metric over nominal ones, sqrt(sum of squared per-attribute
/// deltas). The class attribute never contributes. Missing cells follow the
/// policy: MeanImpute substitutes the training mean for numeric attributes
/// (supplied via numeric_means, indexed by attribute) and contributes 0.5 for
/// nominal ones; MaxPenalty contributes a full unit either way.
inline double distance(const Row& a, const Row& b, const std::vector<AttributeSpec>& schema,
                       MissingPolicy policy, std::span<const double> numeric_means = {}) {
    if (a.size() != schema.size() || b.size() != schema.size())
        throw SchemaMismatch("rows do not conform to the schema");

    auto mean_at = [&](std::size_t i) -> double {
        if (i >= numeric_means.size())
            throw DataError("missing numeric value but no training mean for attribute '" +
                            schema[i].name + "'");
        return numeric_means[i];
    };

    double sum = 0.0;
    for (std::size_t i = 0; i < schema.size(); ++i) {
        if (schema[i].role == AttrRole::Class) continue;
        const Value& va = a[i];
        const Value& vb = b[i];
        double delta;
        if (schema[i].numeric()) {
            if (va.is_missing() || vb.is_missing()) {
                if (policy == MissingPolicy::MaxPenalty) {
                    delta = 1.0;
                } else {
                    const double xa = va.is_missing() ? mean_at(i) : va.num();
                    const double xb = vb.is_missing() ? mean_at(i) : vb.num();
                    delta = xa - xb;
                }
            } else {
                delta = va.num() - vb.num();
            }
        } else {
            if (va.is_missing() || vb.is_missing()) {
                delta = policy == MissingPolicy::MaxPenalty ? 1.0 : 0.5;
            } else {
                delta = va.cat() == vb.cat() ? 0.0 : 1.0;
            }
        }
        sum += delta * delta;
    }
    return std::sqrt(sum);
}

/// Instance-based classifier: stores the (normalized) training set and, per
/// query, votes among the k nearest training rows. Ties at the k-th distance
/// keep the lower original row index; vote ties resolve to the lower class
/// index. Immutable after construction; classify is safe to call concurrently.
class KnnClassifier {
public:
    /// Fits a normalization model on the training set, then indexes it.
    KnnClassifier(const Dataset& train, const KnnConfig& cfg)
        : KnnClassifier(train, fit_model(train, cfg), cfg) {}

    /// Uses a prefit model (cross-validation fits on the training partition).
    KnnClassifier(const Dataset& train, NormalizationModel model, const KnnConfig& cfg)
        : schema_(train.schema()),
          fingerprint_(train.schema_fingerprint()),
          model_(std::move(model)),
          cfg_(cfg),
          n_classes_(train.n_classes()) {
        cfg_.validate();
        if (train.n_rows() == 0) throw EmptyTrainingSet();
        if (static_cast<std::size_t>(cfg_.k) > train.n_rows())
            throw KTooLarge(cfg_.k, train.n_rows());
        if (model_.fingerprint() != fingerprint_)
            throw SchemaMismatch("normalization model does not match the training schema");

        rows_.reserve(train.n_rows());
        labels_.reserve(train.n_rows());
        for (std::size_t i = 0; i < train.n_rows(); ++i) {
            rows_.push_back(model_.apply_row(train.row(i)));
            labels_.push_back(train.label(i));
        }

        // Per-attribute means of the normalized training data, for MeanImpute.
        means_.assign(schema_.size(), 0.0);
        for (std::size_t a = 0; a < schema_.size(); ++a) {
            if (!schema_[a].numeric()) continue;
            double sum = 0.0;
            std::size_t count = 0;
            for (const auto& r : rows_) {
                if (!r[a].is_missing()) {
                    sum += r[a].num();
                    ++count;
                }
            }
            means_[a] = count ? sum / static_cast<double>(count) : 0.0;
        }
    }

    const NormalizationModel& model() const { return model_; }
    const KnnConfig& config() const { return cfg_; }
    std::size_t n_classes() const { return n_classes_; }

    /// Classifies a raw-space row conforming to the training schema. The class
    /// cell is ignored and may be anything, including missing.
    Prediction classify(const Row& query) const {
        if (query.size() != schema_.size())
            throw SchemaMismatch("query row does not conform to the training schema");
        const Row q = model_.apply_row(query);

        std::vector<std::size_t> order(rows_.size());
        std::vector<double> dists(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            order[i] = i;
            dists[i] = distance(q, rows_[i], schema_, cfg_.missing, means_);
        }
        const std::size_t k = static_cast<std::size_t>(cfg_.k);
        std::partial_sort(order.begin(), order.begin() + k, order.end(),
                          [&](std::size_t x, std::size_t y) {
                              if (dists[x] != dists[y]) return dists[x] < dists[y];
                              return x < y;
                          });

        Prediction p;
        p.votes.assign(n_classes_, 0.0);
        p.neighbors.reserve(k);
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t i = order[j];
            p.neighbors.push_back(Neighbor{i, dists[i], labels_[i]});
            const double w = cfg_.weighting == VoteWeighting::MajorityVote
                                 ? 1.0
                                 : 1.0 / (dists[i] + kInverseDistanceEpsilon);
            p.votes[labels_[i]] += w;
        }
        p.label = 0;
        for (std::size_t c = 1; c < n_classes_; ++c)
            if (p.votes[c] > p.votes[p.label]) p.label = c;
        return p;
    }

    std::vector<Prediction> classify_batch(const std::vector<Row>& queries) const {
        std::vector<Prediction> out;
        out.reserve(queries.size());
        for (const auto& q : queries) out.push_back(classify(q));
        return out;
    }

private:
    static NormalizationModel fit_model(const Dataset& train, const KnnConfig& cfg) {
        if (train.n_rows() == 0) throw EmptyTrainingSet();
        return NormalizationModel::fit(train, cfg.normalization);
    }

    std::vector<AttributeSpec> schema_;
    std::string fingerprint_;
    NormalizationModel model_;
    KnnConfig cfg_;
    std::size_t n_classes_;
    std::vector<Row> rows_;  // normalized
    std::vector<std::size_t> labels_;
    std::vector<double> means_;
};

/// One-off classification of a single query; builds a throwaway classifier.
inline Prediction classify(const Dataset& train, const NormalizationModel& model,
                           const Row& query, const KnnConfig& cfg) {
    return KnnClassifier(train, model, cfg).classify(query);
}

/// Elementwise classify over queries, order preserved.
inline std::vector<Prediction> classify_batch(const Dataset& train,
                                              const NormalizationModel& model,
                                              const std::vector<Row>& queries,
                                              const KnnConfig& cfg) {
    return KnnClassifier(train, model, cfg).classify_batch(queries);
}

}  // namespace gaknn
