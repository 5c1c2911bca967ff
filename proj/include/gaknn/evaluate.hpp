#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "gaknn/dataset.hpp"
#include "gaknn/genetic.hpp"
#include "gaknn/knn.hpp"

namespace gaknn {

enum class Protocol { FullTraining, CrossValidation };

inline const char* to_string(Protocol p) {
    return p == Protocol::FullTraining ? "full_training" : "cross_validation";
}

/// Outcome of one evaluation: pooled accuracy, a truth-major confusion matrix
/// and, in cross-validation mode, the per-fold accuracies. Accuracy is always
/// trace(confusion) / sum(confusion).
struct EvalResult {
    Protocol protocol = Protocol::FullTraining;
    int folds = 0;  // CrossValidation only
    double accuracy = 0.0;
    std::size_t correct = 0;
    std::size_t total = 0;
    std::vector<std::vector<std::size_t>> confusion;  // [truth][predicted]
    std::vector<double> fold_accuracies;

    // provenance
    std::string dataset;
    KnnConfig knn;
    Chromosome mask;
    std::uint64_t seed = 0;
};

/// Fraction of positions where prediction equals truth.
inline double accuracy(const std::vector<std::size_t>& predictions,
                       const std::vector<std::size_t>& truth) {
    if (predictions.size() != truth.size())
        throw LengthMismatch("predictions and truth differ in length");
    if (predictions.empty()) throw EmptyInput("cannot compute accuracy of zero samples");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i)
        if (predictions[i] == truth[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(predictions.size());
}

namespace detail {

inline void tally(EvalResult& r, std::size_t truth, std::size_t predicted) {
    r.confusion[truth][predicted] += 1;
    r.total += 1;
    if (truth == predicted) r.correct += 1;
}

}  // namespace detail

/// Trains on the whole dataset and classifies every row against it; the query
/// row stays in the training set, so with k=1 any row whose feature vector is
/// unique matches itself at distance zero.
inline EvalResult evaluate_full_training(const Dataset& d, const Chromosome& mask,
                                         const KnnConfig& cfg) {
    const Dataset proj = project(d, mask);
    const KnnClassifier clf(proj, cfg);

    EvalResult r;
    r.protocol = Protocol::FullTraining;
    r.confusion.assign(proj.n_classes(), std::vector<std::size_t>(proj.n_classes(), 0));
    for (std::size_t i = 0; i < proj.n_rows(); ++i)
        detail::tally(r, proj.label(i), clf.classify(proj.row(i)).label);
    r.accuracy = static_cast<double>(r.correct) / static_cast<double>(r.total);
    r.dataset = d.name();
    r.knn = cfg;
    r.mask = mask;
    return r;
}

/// Stratified k-fold cross-validation with a caller-supplied fold assignment.
/// Per fold, the normalization model is fitted on the training partition only
/// and the held-out rows are classified against it; correctness counts are
/// pooled into one accuracy.
inline EvalResult cross_validate(const Dataset& d, const Chromosome& mask, const KnnConfig& cfg,
                                 const FoldAssignment& folds) {
    const Dataset proj = project(d, mask);
    if (proj.n_rows() != folds.fold_of.size())
        throw LengthMismatch("fold assignment does not cover the dataset");

    EvalResult r;
    r.protocol = Protocol::CrossValidation;
    r.folds = folds.k;
    r.confusion.assign(proj.n_classes(), std::vector<std::size_t>(proj.n_classes(), 0));

    for (int f = 0; f < folds.k; ++f) {
        const auto train_idx = folds.train_indices(f);
        const auto test_idx = folds.test_indices(f);
        if (test_idx.empty()) {
            r.fold_accuracies.push_back(0.0);
            continue;
        }
        const Dataset train = proj.subset(train_idx);
        const KnnClassifier clf(train, cfg);

        std::size_t fold_correct = 0;
        for (const auto i : test_idx) {
            const std::size_t predicted = clf.classify(proj.row(i)).label;
            detail::tally(r, proj.label(i), predicted);
            if (predicted == proj.label(i)) ++fold_correct;
        }
        r.fold_accuracies.push_back(static_cast<double>(fold_correct) /
                                    static_cast<double>(test_idx.size()));
    }
    r.accuracy = static_cast<double>(r.correct) / static_cast<double>(r.total);
    r.dataset = d.name();
    r.knn = cfg;
    r.mask = mask;
    return r;
}

/// Convenience overload deriving the fold assignment from (d, folds, seed).
inline EvalResult cross_validate(const Dataset& d, const Chromosome& mask, const KnnConfig& cfg,
                                 int folds, std::uint64_t seed) {
    EvalResult r = cross_validate(d, mask, cfg, stratified_folds(d, folds, seed));
    r.seed = seed;
    return r;
}

/// Number of internal cross-validation folds behind the wrapper fitness.
inline constexpr int kWrapperFitnessFolds = 5;

/// Wrapper fitness for the genetic search: estimated accuracy of the KNN
/// classifier on the mask-projected dataset, measured by internal stratified
/// cross-validation with a fixed seed. Pure and deterministic per chromosome.
inline std::function<double(const Chromosome&)> make_wrapper_fitness(
    const Dataset& d, const KnnConfig& cfg, int folds = kWrapperFitnessFolds,
    std::uint64_t seed = 0) {
    return [d, cfg, folds, seed](const Chromosome& mask) {
        return cross_validate(d, mask, cfg, folds, seed).accuracy;
    };
}

}  // namespace gaknn
