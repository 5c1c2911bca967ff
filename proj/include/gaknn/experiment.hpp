#pragma once

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gaknn/dataset.hpp"
#include "gaknn/evaluate.hpp"
#include "gaknn/genetic.hpp"
#include "gaknn/knn.hpp"
#include "gaknn/report.hpp"

namespace gaknn {

/// Declarative description of one experiment: where the data comes from,
/// which K values and protocols to evaluate, the genetic-search and
/// classifier parameters, and the one master seed everything derives from.
struct ExperimentSpec {
    // data source: either a file path or the synthetic generator id "heart_ap"
    std::string data_path;
    std::string synthetic;
    int synth_n = 40;
    std::string schema_path;      ///< ARFF declarations for CSV inputs
    std::string class_attribute;  ///< override; empty = last declared

    std::vector<int> ks = {1, 3, 5};
    bool run_full_training = true;
    bool run_cv = true;
    int cv_folds = 5;
    /// Re-run the genetic search inside every cross-validation training fold
    /// instead of once up front. Slower, but the CV estimate then never sees
    /// the held-out rows through the attribute selection.
    bool strict_cv = false;

    GaConfig ga;
    std::optional<std::uint64_t> ga_seed_override;
    KnnConfig knn;
    PrunePolicy prune;

    std::string output_dir = ".";
    std::uint64_t master_seed = 1;

    void validate() const {
        if (ks.empty()) throw ConfigError("K list must not be empty");
        for (int k : ks)
            if (k < 1) throw ConfigError("K values must be >= 1");
        if (!run_full_training && !run_cv) throw ConfigError("no protocol selected");
        if (data_path.empty() == synthetic.empty())
            throw ConfigError("exactly one of a data path or a synthetic source is required");
        if (!synthetic.empty() && synthetic != "heart_ap")
            throw ConfigError("unknown synthetic source '" + synthetic + "'");
        if (run_cv && cv_folds < 2) throw InvalidFoldCount("cross validation needs >= 2 folds");
        if (!data_path.empty() && !std::filesystem::exists(data_path))
            throw DataError("data file does not exist: " + data_path);
        if (!schema_path.empty() && !std::filesystem::exists(schema_path))
            throw DataError("schema file does not exist: " + schema_path);
        ga.validate();
        knn.validate();
        prune.validate();
    }
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << content;
}

}  // namespace detail

/// Loads the dataset an ExperimentSpec points at.
inline Dataset load_dataset(const ExperimentSpec& spec) {
    if (!spec.synthetic.empty()) {
        return synth_heart_ap(spec.synth_n, derive_seed(spec.master_seed, seed_stream::kSynth));
    }
    const std::string text = detail::read_file(spec.data_path);
    ParseOptions opt;
    opt.class_attribute = spec.class_attribute;
    const std::string ext = std::filesystem::path(spec.data_path).extension().string();
    if (detail::lower(ext) == ".csv") {
        if (spec.schema_path.empty())
            throw ConfigError("CSV input requires a schema file (ARFF declarations)");
        const Dataset schema_holder = [&] {
            ParseOptions schema_opt;
            schema_opt.class_attribute = spec.class_attribute;
            return parse_arff(detail::read_file(spec.schema_path), schema_opt);
        }();
        return parse_csv(text, schema_holder.schema(),
                         std::filesystem::path(spec.data_path).stem().string(), opt);
    }
    return parse_arff(text, opt);
}

namespace detail {

/// Runs the genetic-search stage on a dataset: wrapper fitness at the given
/// K, ranking, pruning. Returns the run, ranking and selected mask.
struct GaStage {
    GaRun run;
    AttributeRanking ranking;
    PruneResult pruned;
};

inline GaStage run_ga_stage(const Dataset& d, const ExperimentSpec& spec,
                            std::uint64_t ga_seed, std::uint64_t fitness_seed) {
    KnnConfig fitness_cfg = spec.knn;
    fitness_cfg.k = spec.ks.front();

    GaConfig ga_cfg = spec.ga;
    ga_cfg.seed = ga_seed;

    const auto fitness =
        make_wrapper_fitness(d, fitness_cfg, kWrapperFitnessFolds, fitness_seed);
    GaStage stage;
    stage.run = run_ga(ga_cfg, d.n_features(), fitness);
    stage.ranking = rank_attributes(stage.run);
    stage.pruned = prune(stage.ranking, spec.prune, stage.run.best);
    return stage;
}

/// Strict-mode CV cell: the genetic search runs inside every training fold,
/// so attribute selection never sees the held-out rows.
inline EvalResult cross_validate_ga_per_fold(const Dataset& d, const ExperimentSpec& spec,
                                             const KnnConfig& cfg, std::uint64_t fold_seed) {
    const FoldAssignment folds = stratified_folds(d, spec.cv_folds, fold_seed);

    EvalResult r;
    r.protocol = Protocol::CrossValidation;
    r.folds = folds.k;
    r.confusion.assign(d.n_classes(), std::vector<std::size_t>(d.n_classes(), 0));

    for (int f = 0; f < folds.k; ++f) {
        const Dataset train = d.subset(folds.train_indices(f));
        const auto test_idx = folds.test_indices(f);

        const std::uint64_t fold_tag = static_cast<std::uint64_t>(f) + 1;
        const GaStage stage = run_ga_stage(
            train, spec, derive_seed(spec.master_seed, seed_stream::kGa, fold_tag),
            derive_seed(spec.master_seed, seed_stream::kFitness, fold_tag));

        const Dataset train_proj = project(train, stage.pruned.mask);
        const KnnClassifier clf(train_proj, cfg);

        // Project held-out rows with the fold's mask before classifying.
        const Dataset d_proj = project(d, stage.pruned.mask);
        std::size_t fold_correct = 0;
        for (const auto i : test_idx) {
            const std::size_t predicted = clf.classify(d_proj.row(i)).label;
            tally(r, d_proj.label(i), predicted);
            if (predicted == d_proj.label(i)) ++fold_correct;
        }
        r.fold_accuracies.push_back(
            test_idx.empty() ? 0.0
                             : static_cast<double>(fold_correct) /
                                   static_cast<double>(test_idx.size()));
    }
    r.accuracy = static_cast<double>(r.correct) / static_cast<double>(r.total);
    r.dataset = d.name();
    r.knn = cfg;
    r.mask = Chromosome::all_ones(d.n_features());  // per-fold masks differ
    r.seed = fold_seed;
    return r;
}

}  // namespace detail

/// Executes the full two-part pipeline: (1) genetic search over attribute
/// subsets with wrapper fitness, attribute ranking and pruning; (2) accuracy
/// of the pruned mask and of the all-attribute baseline for every requested
/// protocol and K. Fully deterministic for a fixed spec and master seed.
///
/// By default the genetic search runs once on the full dataset before
/// evaluation, which lets attribute selection see rows that later serve as CV
/// test rows; set strict_cv for the leak-free variant.
inline Report run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const Dataset data = load_dataset(spec);
    if (data.n_rows() == 0) throw DataError("dataset '" + data.name() + "' has no instances");

    const std::uint64_t ga_seed = spec.ga_seed_override
                                      ? *spec.ga_seed_override
                                      : derive_seed(spec.master_seed, seed_stream::kGa);
    const std::uint64_t fitness_seed = derive_seed(spec.master_seed, seed_stream::kFitness);
    const std::uint64_t fold_seed = derive_seed(spec.master_seed, seed_stream::kFolds);

    const detail::GaStage stage = detail::run_ga_stage(data, spec, ga_seed, fitness_seed);

    Report report;
    report.dataset = {data.name(), data.n_rows(), data.n_attributes()};
    for (const auto i : data.feature_indices())
        report.feature_names.push_back(data.schema()[i].name);
    report.ga_progress = progress_records(stage.run, spec.ga.report_frequency);
    report.ga_evaluations = stage.run.fitness_evaluations;
    report.ranking = stage.ranking;
    report.selected_mask = stage.pruned.mask;
    report.prune_fallback = stage.pruned.degenerate_fallback;
    report.ks = spec.ks;
    report.cv_folds = spec.cv_folds;
    report.strict_cv = spec.strict_cv;
    report.master_seed = spec.master_seed;
    report.ga_cfg = spec.ga;
    report.ga_cfg.seed = ga_seed;
    report.knn_cfg = spec.knn;
    report.prune_policy = spec.prune;

    // Wrapper estimates for the comparison invariant: the selected mask's
    // fitness can never fall below the seeded all-ones baseline.
    {
        KnnConfig fitness_cfg = spec.knn;
        fitness_cfg.k = spec.ks.front();
        const auto fitness =
            make_wrapper_fitness(data, fitness_cfg, kWrapperFitnessFolds, fitness_seed);
        report.with_ga_fitness = fitness(stage.pruned.mask);
        report.without_ga_fitness = fitness(Chromosome::all_ones(data.n_features()));
    }

    const Chromosome baseline = Chromosome::all_ones(data.n_features());
    for (int k : spec.ks) {
        KnnConfig cfg = spec.knn;
        cfg.k = k;
        if (spec.run_full_training) {
            report.grid.push_back({Protocol::FullTraining, k, true,
                                   evaluate_full_training(data, stage.pruned.mask, cfg).accuracy});
            report.grid.push_back({Protocol::FullTraining, k, false,
                                   evaluate_full_training(data, baseline, cfg).accuracy});
        }
        if (spec.run_cv) {
            const EvalResult with_ga =
                spec.strict_cv
                    ? detail::cross_validate_ga_per_fold(data, spec, cfg, fold_seed)
                    : cross_validate(data, stage.pruned.mask, cfg, spec.cv_folds, fold_seed);
            report.grid.push_back({Protocol::CrossValidation, k, true, with_ga.accuracy});
            report.grid.push_back(
                {Protocol::CrossValidation, k, false,
                 cross_validate(data, baseline, cfg, spec.cv_folds, fold_seed).accuracy});
        }
    }

    report.comparison_protocol =
        spec.run_full_training ? Protocol::FullTraining : Protocol::CrossValidation;
    report.comparison_k = spec.ks.front();
    for (const auto& cell : report.grid) {
        if (cell.protocol == report.comparison_protocol && cell.k == report.comparison_k) {
            (cell.with_ga ? report.comparison_with_ga : report.comparison_without_ga) =
                cell.accuracy;
        }
    }
    return report;
}

/// Writes <name>_<contenthash>.md and .csv into the output directory and
/// returns the two paths. File names carry a content hash instead of a
/// timestamp so reruns of the same spec produce identical artifacts.
inline std::pair<std::string, std::string> write_report_files(const Report& r,
                                                              const std::string& output_dir) {
    std::string stem = r.dataset.name;
    for (char& c : stem)
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
    const std::string base = stem + "_" + report_content_hash(r);

    std::filesystem::create_directories(output_dir);
    const auto md_path = (std::filesystem::path(output_dir) / (base + ".md")).string();
    const auto csv_path = (std::filesystem::path(output_dir) / (base + ".csv")).string();
    detail::write_file(md_path, emit_report_markdown(r));
    detail::write_file(csv_path, emit_report_csv(r));
    return {md_path, csv_path};
}

// ---------------------------------------------------------------------------
// Spec files: flat key/value lines with dotted section names
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<int> parse_int_list(const std::string& v, const std::string& key) {
    std::vector<int> out;
    for (const auto& field : split_fields(v)) {
        try {
            out.push_back(std::stoi(field));
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': expected an integer list, got '" + v + "'");
        }
    }
    return out;
}

inline int parse_int(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const int out = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
    }
}

inline double parse_real(const std::string& v, const std::string& key) {
    const char* begin = v.c_str();
    char* end = nullptr;
    const double out = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    return out;
}

inline bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

inline std::uint64_t parse_u64(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const std::uint64_t out = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a non-negative integer, got '" + v + "'");
    }
}

}  // namespace detail

/// Parses the experiment spec grammar: one `key = value` per line, '#'
/// comments, dotted key names (data.*, knn.*, ga.*, cv.*, prune.*, output.*).
/// Unknown keys are configuration errors.
inline ExperimentSpec parse_experiment_spec(const std::string& text) {
    ExperimentSpec spec;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string_view t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("spec line " + std::to_string(lineno) + ": expected key = value");
        const std::string key(detail::trim(t.substr(0, eq)));
        const std::string value(detail::trim(t.substr(eq + 1)));

        if (key == "data.path") {
            spec.data_path = value;
        } else if (key == "data.synthetic") {
            spec.synthetic = value;
        } else if (key == "data.synth_n") {
            spec.synth_n = detail::parse_int(value, key);
        } else if (key == "data.schema") {
            spec.schema_path = value;
        } else if (key == "data.class") {
            spec.class_attribute = value;
        } else if (key == "knn.k") {
            spec.ks = detail::parse_int_list(value, key);
        } else if (key == "knn.weighting") {
            if (value == "majority") spec.knn.weighting = VoteWeighting::MajorityVote;
            else if (value == "inverse_distance") spec.knn.weighting = VoteWeighting::InverseDistance;
            else throw ConfigError("key 'knn.weighting': unknown value '" + value + "'");
        } else if (key == "knn.missing") {
            if (value == "mean_impute") spec.knn.missing = MissingPolicy::MeanImpute;
            else if (value == "max_penalty") spec.knn.missing = MissingPolicy::MaxPenalty;
            else throw ConfigError("key 'knn.missing': unknown value '" + value + "'");
        } else if (key == "knn.normalization") {
            if (value == "none") spec.knn.normalization = NormMethod::None;
            else if (value == "zscore") spec.knn.normalization = NormMethod::ZScore;
            else if (value == "minmax") spec.knn.normalization = NormMethod::MinMax;
            else throw ConfigError("key 'knn.normalization': unknown value '" + value + "'");
        } else if (key == "protocols") {
            spec.run_full_training = false;
            spec.run_cv = false;
            for (const auto& p : detail::split_fields(value)) {
                if (p == "full_training") spec.run_full_training = true;
                else if (p == "cv" || p == "cross_validation") spec.run_cv = true;
                else throw ConfigError("key 'protocols': unknown protocol '" + p + "'");
            }
        } else if (key == "cv.folds") {
            spec.cv_folds = detail::parse_int(value, key);
        } else if (key == "cv.strict") {
            spec.strict_cv = detail::parse_bool(value, key);
        } else if (key == "ga.crossover_prob") {
            spec.ga.crossover_prob = detail::parse_real(value, key);
        } else if (key == "ga.mutation_prob") {
            spec.ga.mutation_prob = detail::parse_real(value, key);
        } else if (key == "ga.population_size") {
            spec.ga.population_size = detail::parse_int(value, key);
        } else if (key == "ga.max_generations") {
            spec.ga.max_generations = detail::parse_int(value, key);
        } else if (key == "ga.report_frequency") {
            spec.ga.report_frequency = detail::parse_int(value, key);
        } else if (key == "ga.seed") {
            spec.ga_seed_override = detail::parse_u64(value, key);
        } else if (key == "ga.selection") {
            if (value == "roulette") spec.ga.selection = SelectionMethod::RouletteWheel;
            else if (value == "rank") spec.ga.selection = SelectionMethod::Rank;
            else if (value == "tournament") spec.ga.selection = SelectionMethod::Tournament;
            else throw ConfigError("key 'ga.selection': unknown value '" + value + "'");
        } else if (key == "ga.tournament_size") {
            spec.ga.tournament_size = detail::parse_int(value, key);
        } else if (key == "ga.crossover") {
            if (value == "single_point") spec.ga.crossover = CrossoverOp::SinglePoint;
            else if (value == "two_point") spec.ga.crossover = CrossoverOp::TwoPoint;
            else if (value == "uniform") spec.ga.crossover = CrossoverOp::Uniform;
            else throw ConfigError("key 'ga.crossover': unknown value '" + value + "'");
        } else if (key == "ga.elitism") {
            spec.ga.elitism_count = detail::parse_int(value, key);
        } else if (key == "prune.policy") {
            if (value == "keep_top_m") spec.prune.kind = PrunePolicy::Kind::KeepTopM;
            else if (value == "score_threshold") spec.prune.kind = PrunePolicy::Kind::ScoreThreshold;
            else if (value == "best_chromosome") spec.prune.kind = PrunePolicy::Kind::BestChromosome;
            else throw ConfigError("key 'prune.policy': unknown value '" + value + "'");
        } else if (key == "prune.m") {
            spec.prune.m = detail::parse_int(value, key);
        } else if (key == "prune.tau") {
            spec.prune.tau = detail::parse_real(value, key);
        } else if (key == "output.dir") {
            spec.output_dir = value;
        } else if (key == "seed") {
            spec.master_seed = detail::parse_u64(value, key);
        } else {
            throw ConfigError("spec line " + std::to_string(lineno) + ": unknown key '" + key +
                              "'");
        }
    }
    return spec;
}

}  // namespace gaknn
