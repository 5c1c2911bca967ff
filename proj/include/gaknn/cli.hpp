#pragma once

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaknn/experiment.hpp"

namespace gaknn {

/// CLI exit codes: 0 success, 2 configuration error, 3 data error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;

namespace detail {

/// Shared --data/--synthetic/--class/--schema flags for eval and rank.
struct DataFlags {
    std::string data_path;
    std::string synthetic;
    int synth_n = 40;
    std::string schema_path;
    std::string class_attribute;

    void attach(CLI::App* cmd) {
        cmd->add_option("--data", data_path, "ARFF or CSV input file");
        cmd->add_option("--synthetic", synthetic, "synthetic source id (heart_ap)");
        cmd->add_option("--n", synth_n, "synthetic instance count")->capture_default_str();
        cmd->add_option("--schema", schema_path, "ARFF declarations for CSV input");
        cmd->add_option("--class", class_attribute, "class attribute name (default: last)");
    }

    Dataset load(std::uint64_t master_seed) const {
        ExperimentSpec spec;
        spec.data_path = data_path;
        spec.synthetic = synthetic;
        spec.synth_n = synth_n;
        spec.schema_path = schema_path;
        spec.class_attribute = class_attribute;
        spec.master_seed = master_seed;
        if (spec.data_path.empty() && spec.synthetic.empty())
            throw ConfigError("one of --data or --synthetic is required");
        if (!spec.data_path.empty() && !spec.synthetic.empty())
            throw ConfigError("--data and --synthetic are mutually exclusive");
        if (!spec.synthetic.empty() && spec.synthetic != "heart_ap")
            throw ConfigError("unknown synthetic source '" + spec.synthetic + "'");
        return load_dataset(spec);
    }
};

inline void attach_knn_flags(CLI::App* cmd, KnnConfig& cfg) {
    cmd->add_option("--weighting", [&cfg](const std::vector<std::string>& v) {
           if (v[0] == "majority") cfg.weighting = VoteWeighting::MajorityVote;
           else if (v[0] == "inverse_distance") cfg.weighting = VoteWeighting::InverseDistance;
           else throw CLI::ValidationError("--weighting", "must be majority or inverse_distance");
           return true;
       },
       "vote weighting: majority | inverse_distance");
    cmd->add_option("--missing", [&cfg](const std::vector<std::string>& v) {
           if (v[0] == "mean_impute") cfg.missing = MissingPolicy::MeanImpute;
           else if (v[0] == "max_penalty") cfg.missing = MissingPolicy::MaxPenalty;
           else throw CLI::ValidationError("--missing", "must be mean_impute or max_penalty");
           return true;
       },
       "missing-value policy: mean_impute | max_penalty");
    cmd->add_option("--normalization", [&cfg](const std::vector<std::string>& v) {
           if (v[0] == "none") cfg.normalization = NormMethod::None;
           else if (v[0] == "zscore") cfg.normalization = NormMethod::ZScore;
           else if (v[0] == "minmax") cfg.normalization = NormMethod::MinMax;
           else throw CLI::ValidationError("--normalization", "must be none, zscore or minmax");
           return true;
       },
       "normalization: none | zscore | minmax (default minmax)");
}

inline void attach_ga_flags(CLI::App* cmd, GaConfig& ga) {
    cmd->add_option("--population", ga.population_size, "population size")
        ->capture_default_str();
    cmd->add_option("--generations", ga.max_generations, "maximum generations")
        ->capture_default_str();
    cmd->add_option("--crossover-prob", ga.crossover_prob, "crossover probability")
        ->capture_default_str();
    cmd->add_option("--mutation-prob", ga.mutation_prob, "mutation probability")
        ->capture_default_str();
    cmd->add_option("--elitism", ga.elitism_count, "elite count")->capture_default_str();
    cmd->add_option("--tournament-size", ga.tournament_size, "tournament size")
        ->capture_default_str();
    cmd->add_option("--selection", [&ga](const std::vector<std::string>& v) {
           if (v[0] == "roulette") ga.selection = SelectionMethod::RouletteWheel;
           else if (v[0] == "rank") ga.selection = SelectionMethod::Rank;
           else if (v[0] == "tournament") ga.selection = SelectionMethod::Tournament;
           else throw CLI::ValidationError("--selection", "must be roulette, rank or tournament");
           return true;
       },
       "selection: roulette | rank | tournament");
    cmd->add_option("--crossover-op", [&ga](const std::vector<std::string>& v) {
           if (v[0] == "single_point") ga.crossover = CrossoverOp::SinglePoint;
           else if (v[0] == "two_point") ga.crossover = CrossoverOp::TwoPoint;
           else if (v[0] == "uniform") ga.crossover = CrossoverOp::Uniform;
           else throw CLI::ValidationError("--crossover-op",
                                           "must be single_point, two_point or uniform");
           return true;
       },
       "crossover: single_point | two_point | uniform");
}

inline void print_eval_result(const EvalResult& r, std::ostream& out) {
    out << "dataset: " << r.dataset << "\n";
    out << "protocol: " << to_string(r.protocol);
    if (r.protocol == Protocol::CrossValidation) out << " (" << r.folds << " folds)";
    out << "\nk: " << r.knn.k << "\nmask: " << r.mask.to_string() << "\n";
    out << "accuracy: " << format_double(r.accuracy) << " (" << r.correct << "/" << r.total
        << ")\n";
    if (!r.fold_accuracies.empty()) {
        out << "fold accuracies:";
        for (double a : r.fold_accuracies) out << ' ' << format_double(a);
        out << "\n";
    }
    out << "confusion (rows = truth):\n";
    for (const auto& row : r.confusion) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "  ") << row[j];
        out << "\n";
    }
}

}  // namespace detail

/// Entry point behind the `gaknn` binary; also callable in-process for tests.
/// Diagnostics go to err; reports and results go to out or to files.
inline int cli_main(std::vector<std::string> args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
    CLI::App app{"genetic-search attribute selection around a k-nearest-neighbor classifier"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "run a spec-file experiment and write reports");
    std::string spec_path;
    std::string out_dir_flag;
    run_cmd->add_option("--spec", spec_path, "experiment spec file")->required();
    run_cmd->add_option("--out", out_dir_flag, "output directory (overrides spec and env)");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "single ad-hoc evaluation");
    detail::DataFlags eval_data;
    eval_data.attach(eval_cmd);
    KnnConfig eval_knn;
    int eval_k = 1;
    int eval_folds = 5;
    std::string eval_protocol = "full_training";
    std::string eval_mask;
    std::uint64_t eval_seed = 1;
    eval_cmd->add_option("--k", eval_k, "neighbor count")->capture_default_str();
    eval_cmd->add_option("--folds", eval_folds, "cross-validation folds")->capture_default_str();
    eval_cmd->add_option("--protocol", eval_protocol, "full_training | cv")
        ->capture_default_str();
    eval_cmd->add_option("--mask", eval_mask, "attribute mask bit string (default: all ones)");
    eval_cmd->add_option("--seed", eval_seed, "fold seed")->capture_default_str();
    detail::attach_knn_flags(eval_cmd, eval_knn);

    // rank
    auto* rank_cmd = app.add_subcommand("rank", "genetic-search attribute ranking only");
    detail::DataFlags rank_data;
    rank_data.attach(rank_cmd);
    GaConfig rank_ga;
    KnnConfig rank_knn;
    int rank_k = 1;
    std::uint64_t rank_seed = 1;
    rank_cmd->add_option("--k", rank_k, "neighbor count for the wrapper fitness")
        ->capture_default_str();
    rank_cmd->add_option("--seed", rank_seed, "master seed")->capture_default_str();
    detail::attach_ga_flags(rank_cmd, rank_ga);
    detail::attach_knn_flags(rank_cmd, rank_knn);

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic heart-AP ARFF file");
    int synth_n = 40;
    std::uint64_t synth_seed = 1;
    std::string synth_out;
    synth_cmd->add_option("--n", synth_n, "instance count")->capture_default_str();
    synth_cmd->add_option("--seed", synth_seed, "generator seed")->capture_default_str();
    synth_cmd->add_option("--out", synth_out, "output ARFF path")->required();

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "parse and invariant-check a data file");
    std::string validate_path;
    std::string validate_schema;
    std::string validate_class;
    validate_cmd->add_option("file", validate_path, "ARFF or CSV file")->required();
    validate_cmd->add_option("--schema", validate_schema, "ARFF declarations for CSV input");
    validate_cmd->add_option("--class", validate_class, "class attribute name");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run_cmd->parsed()) {
            ExperimentSpec spec = parse_experiment_spec(detail::read_file(spec_path));
            if (const char* env = std::getenv("GAKNN_OUTPUT_DIR")) spec.output_dir = env;
            if (!out_dir_flag.empty()) spec.output_dir = out_dir_flag;
            const Report report = run_experiment(spec);
            const auto [md, csv] = write_report_files(report, spec.output_dir);
            out << md << "\n" << csv << "\n";
        } else if (eval_cmd->parsed()) {
            const Dataset data = eval_data.load(eval_seed);
            eval_knn.k = eval_k;
            const Chromosome mask = eval_mask.empty() ? Chromosome::all_ones(data.n_features())
                                                      : Chromosome::from_string(eval_mask);
            EvalResult result;
            if (eval_protocol == "full_training" || eval_protocol == "full") {
                result = evaluate_full_training(data, mask, eval_knn);
            } else if (eval_protocol == "cv" || eval_protocol == "cross_validation") {
                result = cross_validate(data, mask, eval_knn, eval_folds,
                                        derive_seed(eval_seed, seed_stream::kFolds));
            } else {
                throw ConfigError("unknown protocol '" + eval_protocol + "'");
            }
            detail::print_eval_result(result, out);
        } else if (rank_cmd->parsed()) {
            const Dataset data = rank_data.load(rank_seed);
            rank_knn.k = rank_k;
            rank_ga.seed = derive_seed(rank_seed, seed_stream::kGa);
            const auto fitness = make_wrapper_fitness(
                data, rank_knn, kWrapperFitnessFolds,
                derive_seed(rank_seed, seed_stream::kFitness));
            const GaRun run = run_ga(rank_ga, data.n_features(), fitness);
            const AttributeRanking ranking = rank_attributes(run);
            const auto features = data.feature_indices();
            out << "rank\tattribute\tscore\n";
            for (std::size_t pos = 0; pos < ranking.order.size(); ++pos) {
                const std::size_t j = ranking.order[pos];
                out << pos + 1 << '\t' << data.schema()[features[j]].name << '\t'
                    << detail::format_double(ranking.scores[j]) << '\n';
            }
            out << "best mask: " << run.best.to_string() << " (fitness "
                << detail::format_double(run.best_fitness) << ", "
                << run.fitness_evaluations << " evaluations)\n";
        } else if (synth_cmd->parsed()) {
            detail::write_file(synth_out, to_arff(synth_heart_ap(synth_n, synth_seed)));
            out << synth_out << "\n";
        } else if (validate_cmd->parsed()) {
            const std::string text = detail::read_file(validate_path);
            ParseOptions opt;
            opt.class_attribute = validate_class;
            const std::string ext =
                std::filesystem::path(validate_path).extension().string();
            Dataset data = [&] {
                if (detail::lower(ext) == ".csv") {
                    if (validate_schema.empty())
                        throw ConfigError("CSV validation requires --schema");
                    const Dataset schema_holder =
                        parse_arff(detail::read_file(validate_schema), opt);
                    return parse_csv(text, schema_holder.schema(),
                                     std::filesystem::path(validate_path).stem().string(), opt);
                }
                return parse_arff(text, opt);
            }();
            out << "OK: " << data.name() << ": " << data.n_rows() << " instances, "
                << data.n_attributes() << " attributes, class '" << data.class_attribute().name
                << "' with " << data.n_classes() << " categories\n";
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}

}  // namespace gaknn
