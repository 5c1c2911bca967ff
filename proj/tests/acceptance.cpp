// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gaknn/cli.hpp"
#include "gaknn/gaknn.hpp"

using namespace gaknn;

namespace {

using Problems = std::vector<std::string>;

std::string fixture(const std::string& name) {
    return std::string(GAKNN_FIXTURE_DIR) + "/" + name;
}

const std::string kHeartFixture = fixture("heart_statlog.arff");
const std::string kHeartHint =
    "fixture tests/fixtures/heart_statlog.arff not found; generate it with "
    "scripts/fetch_statlog_heart.py (network required, runs outside the test suite)";

Dataset load_weather() { return parse_arff(detail::read_file(fixture("weather.arff"))); }

void expect(Problems& problems, bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
}

template <typename T>
std::string str(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// --------------------------------------------------------------------------
// criterion 1: property suite
// --------------------------------------------------------------------------

void check_metric_axioms(Problems& problems) {
    Rng rng = make_rng(0xD15);
    std::size_t failures = 0;
    std::vector<AttributeSpec> schema = {
        {"n0", AttrKind::Numeric, AttrRole::Feature, {}},
        {"n1", AttrKind::Numeric, AttrRole::Feature, {}},
        {"n2", AttrKind::Numeric, AttrRole::Feature, {}},
        {"m0", AttrKind::Nominal, AttrRole::Feature, {"a", "b", "c"}},
        {"m1", AttrKind::Nominal, AttrRole::Feature, {"a", "b"}},
        {"cl", AttrKind::Nominal, AttrRole::Class, {"x", "y"}},
    };
    auto random_row = [&]() {
        Row r;
        for (int j = 0; j < 3; ++j) r.push_back(Value::numeric(uniform01(rng) * 8.0 - 4.0));
        r.push_back(Value::nominal(uniform_index(rng, 3)));
        r.push_back(Value::nominal(uniform_index(rng, 2)));
        r.push_back(Value::nominal(uniform_index(rng, 2)));
        return r;
    };
    for (int trial = 0; trial < 10000; ++trial) {
        const Row a = random_row(), b = random_row(), c = random_row();
        const double ab = distance(a, b, schema, MissingPolicy::MeanImpute);
        const double ba = distance(b, a, schema, MissingPolicy::MeanImpute);
        const double ac = distance(a, c, schema, MissingPolicy::MeanImpute);
        const double bc = distance(b, c, schema, MissingPolicy::MeanImpute);
        const double aa = distance(a, a, schema, MissingPolicy::MeanImpute);
        if (!(ab >= 0.0) || aa != 0.0 || ab != ba || !(ac <= ab + bc + 1e-9)) ++failures;
    }
    expect(problems, failures == 0,
           "metric axioms violated on " + str(failures) + " of 10000 random triples");
}

void check_normalization_postconditions(Problems& problems) {
    Rng rng = make_rng(0xA11);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<double>> features;
        std::vector<std::size_t> labels;
        for (int i = 0; i < 25; ++i) {
            features.push_back({uniform01(rng) * 50.0, uniform01(rng) - 3.0});
            labels.push_back(uniform_index(rng, 2));
        }
        std::vector<AttributeSpec> schema = {
            {"f0", AttrKind::Numeric, AttrRole::Feature, {}},
            {"f1", AttrKind::Numeric, AttrRole::Feature, {}},
            {"c", AttrKind::Nominal, AttrRole::Class, {"a", "b"}},
        };
        std::vector<Row> rows;
        for (std::size_t i = 0; i < features.size(); ++i)
            rows.push_back({Value::numeric(features[i][0]), Value::numeric(features[i][1]),
                            Value::nominal(labels[i])});
        const Dataset d("norm", schema, rows);

        const Dataset z = NormalizationModel::fit(d, NormMethod::ZScore).apply(d);
        for (std::size_t a = 0; a < 2; ++a) {
            double mean = 0.0;
            for (const auto& row : z.rows()) mean += row[a].num();
            mean /= static_cast<double>(z.n_rows());
            double ss = 0.0;
            for (const auto& row : z.rows()) ss += (row[a].num() - mean) * (row[a].num() - mean);
            const double sd = std::sqrt(ss / static_cast<double>(z.n_rows() - 1));
            expect(problems, std::abs(mean) < 1e-9,
                   "zscore training mean " + str(mean) + " exceeds 1e-9");
            expect(problems, std::abs(sd - 1.0) < 1e-9,
                   "zscore training stddev " + str(sd) + " deviates from 1 by more than 1e-9");
        }

        const Dataset m = NormalizationModel::fit(d, NormMethod::MinMax).apply(d);
        for (std::size_t a = 0; a < 2; ++a) {
            double lo = 1e300, hi = -1e300;
            for (const auto& row : m.rows()) {
                lo = std::min(lo, row[a].num());
                hi = std::max(hi, row[a].num());
            }
            expect(problems, lo == 0.0 && hi == 1.0,
                   "minmax training column endpoints are [" + str(lo) + "," + str(hi) + "]");
        }
    }
}

void check_fold_invariants(Problems& problems) {
    Rng rng = make_rng(0xF01D);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 12 + uniform_index(rng, 60);
        std::vector<AttributeSpec> schema = {
            {"f", AttrKind::Numeric, AttrRole::Feature, {}},
            {"c", AttrKind::Nominal, AttrRole::Class, {"a", "b", "c"}},
        };
        std::vector<Row> rows;
        for (std::size_t i = 0; i < n; ++i)
            rows.push_back({Value::numeric(uniform01(rng)), Value::nominal(uniform_index(rng, 3))});
        const Dataset d("folds", schema, rows);
        const int k = 2 + static_cast<int>(uniform_index(rng, 6));
        const std::uint64_t seed = rng();

        const FoldAssignment fa = stratified_folds(d, k, seed);
        expect(problems, fa == stratified_folds(d, k, seed), "fold assignment not deterministic");
        std::vector<int> fold_counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (fa.fold_of[i] < 0 || fa.fold_of[i] >= k) {
                problems.push_back("fold index out of range");
                return;
            }
            ++fold_counts[fa.fold_of[i]];
        }
        int covered = 0;
        for (int c : fold_counts) covered += c;
        expect(problems, covered == static_cast<int>(n), "fold assignment is not a partition");

        for (std::size_t c = 0; c < d.n_classes(); ++c) {
            std::vector<int> counts(k, 0);
            for (std::size_t i = 0; i < n; ++i)
                if (d.label(i) == c) ++counts[fa.fold_of[i]];
            const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
            expect(problems, *hi - *lo <= 1,
                   "class " + str(c) + " fold sizes spread " + str(*hi - *lo) + " > 1");
        }
    }
}

void check_crossover_conservation(Problems& problems) {
    Rng rng = make_rng(0xC0);
    std::size_t failures = 0;
    for (CrossoverOp op :
         {CrossoverOp::SinglePoint, CrossoverOp::TwoPoint, CrossoverOp::Uniform}) {
        for (int trial = 0; trial < 2000; ++trial) {
            const std::size_t len = 2 + uniform_index(rng, 16);
            Chromosome p1(len), p2(len);
            for (std::size_t i = 0; i < len; ++i) {
                p1.set(i, bernoulli(rng, 0.5));
                p2.set(i, bernoulli(rng, 0.5));
            }
            const auto [c1, c2] = gaknn::detail::cross_bits(p1, p2, op, rng);
            for (std::size_t i = 0; i < len; ++i)
                if (p1.test(i) + p2.test(i) != c1.test(i) + c2.test(i)) ++failures;
        }
    }
    expect(problems, failures == 0,
           "crossover bit conservation violated at " + str(failures) + " positions");
}

void check_mutation_expectation(Problems& problems) {
    const double p = 0.033;
    const std::size_t len = 20;
    const int trials = 100000;
    Chromosome base(len);
    for (std::size_t i = 0; i < len; i += 2) base.set(i);

    Rng rng = make_rng(0x31);
    long long flips = 0;
    for (int t = 0; t < trials; ++t) {
        const Chromosome m = mutate(base, p, rng);
        for (std::size_t i = 0; i < len; ++i)
            if (m.test(i) != base.test(i)) ++flips;
    }
    const double mean = static_cast<double>(flips) / trials;
    const double expected = static_cast<double>(len) * p;  // 0.66
    const double sigma = std::sqrt(static_cast<double>(len) * p * (1.0 - p) / trials);
    expect(problems, std::abs(mean - expected) <= 3.0 * sigma,
           "mean flips " + str(mean) + " outside " + str(expected) + " +- 3*" + str(sigma));
}

void check_elitism_monotonicity(Problems& problems) {
    const auto rugged = [](const Chromosome& c) {
        double score = 0.0;
        for (std::size_t i = 1; i < c.size(); ++i)
            if (c.test(i) != c.test(i - 1)) score += 1.0;
        return score / static_cast<double>(c.size() - 1);
    };
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        GaConfig cfg;
        cfg.seed = seed;
        cfg.max_generations = 25;
        const GaRun run = run_ga(cfg, 14, rugged);
        for (std::size_t g = 1; g < run.records.size(); ++g)
            expect(problems,
                   run.records[g].best_fitness >= run.records[g - 1].best_fitness,
                   "best fitness decreased at generation " + str(run.records[g].generation) +
                       " (seed " + str(seed) + ")");
    }
}

void check_end_to_end_determinism(Problems& problems) {
    ExperimentSpec spec;
    spec.data_path = fixture("weather.arff");
    const Report a = run_experiment(spec);
    const Report b = run_experiment(spec);
    expect(problems, emit_report_markdown(a) == emit_report_markdown(b),
           "two runs of the same spec produced different markdown reports");
    expect(problems, emit_report_csv(a) == emit_report_csv(b),
           "two runs of the same spec produced different CSV reports");
}

void criterion1(Problems& problems) {
    check_metric_axioms(problems);
    check_normalization_postconditions(problems);
    check_fold_invariants(problems);
    check_crossover_conservation(problems);
    check_mutation_expectation(problems);
    check_elitism_monotonicity(problems);
    check_end_to_end_determinism(problems);
}

// --------------------------------------------------------------------------
// criterion 2: OneMax oracle
// --------------------------------------------------------------------------

void criterion2(Problems& problems) {
    GaConfig cfg;  // crossover 0.6, mutation 0.033, population 20, 20 generations, seed 1
    const GaRun run = run_ga(cfg, 8, [](const Chromosome& c) {
        return static_cast<double>(c.count()) / static_cast<double>(c.size());
    });
    expect(problems, run.best_fitness == 1.0,
           "OneMax best fitness " + str(run.best_fitness) + " != 1.0 within 20 generations");
    expect(problems, run.best == Chromosome::all_ones(8), "OneMax winner is not all-ones");
}

// --------------------------------------------------------------------------
// criterion 3: exhaustive-subset oracle on weather
// --------------------------------------------------------------------------

void criterion3(Problems& problems) {
    const Dataset weather = load_weather();
    KnnConfig cfg;
    cfg.k = 1;
    const std::uint64_t fitness_seed = derive_seed(1, seed_stream::kFitness);
    const auto fitness = make_wrapper_fitness(weather, cfg, kWrapperFitnessFolds, fitness_seed);

    // brute force over all 2^4 - 1 non-empty masks
    double exhaustive_best = -1.0;
    for (unsigned m = 1; m < 16; ++m) {
        Chromosome mask(4);
        for (unsigned j = 0; j < 4; ++j)
            if (m & (1u << j)) mask.set(j);
        exhaustive_best = std::max(exhaustive_best, fitness(mask));
    }

    GaConfig ga_cfg;  // defaults, seed 1
    const GaRun run = run_ga(ga_cfg, 4, fitness);
    expect(problems, run.best_fitness == exhaustive_best,
           "GA best " + str(run.best_fitness) + " != exhaustive best " + str(exhaustive_best));
}

// --------------------------------------------------------------------------
// criteria 4 and 5: statlog heart reproduction (fixture-backed)
// --------------------------------------------------------------------------

bool heart_fixture_available() { return std::filesystem::exists(kHeartFixture); }

Dataset load_heart() { return parse_arff(detail::read_file(kHeartFixture)); }

void criterion4(Problems& problems) {
    if (!heart_fixture_available()) {
        problems.push_back(kHeartHint);
        return;
    }
    const Dataset heart = load_heart();
    expect(problems, heart.n_rows() == 270,
           "statlog heart should have 270 instances, got " + str(heart.n_rows()));
    expect(problems, heart.n_attributes() == 14,
           "statlog heart should have 14 attributes, got " + str(heart.n_attributes()));

    // duplicate-scan oracle: k=1 with self-inclusion predicts, for every row,
    // the label of the lowest-index row sharing its feature vector
    std::map<std::string, std::size_t> first_seen;
    std::size_t expected_correct = 0;
    bool duplicates = false;
    for (std::size_t i = 0; i < heart.n_rows(); ++i) {
        std::string key;
        for (std::size_t a = 0; a < heart.n_attributes(); ++a) {
            if (a == heart.class_index()) continue;
            key += heart.row(i)[a].is_numeric()
                       ? gaknn::detail::format_double(heart.row(i)[a].num())
                       : str(heart.row(i)[a].cat());
            key += '|';
        }
        auto [it, inserted] = first_seen.emplace(key, i);
        if (!inserted) duplicates = true;
        if (heart.label(it->second) == heart.label(i)) ++expected_correct;
    }
    const double expected_accuracy =
        static_cast<double>(expected_correct) / static_cast<double>(heart.n_rows());

    KnnConfig cfg;
    cfg.k = 1;
    const EvalResult r =
        evaluate_full_training(heart, Chromosome::all_ones(heart.n_features()), cfg);
    if (!duplicates) {
        expect(problems, expected_accuracy == 1.0, "duplicate-scan oracle disagrees with itself");
        expect(problems, r.accuracy == 1.0,
               "full-training K=1 accuracy " + str(r.accuracy) + " != 1.0");
    } else {
        expect(problems, r.accuracy == expected_accuracy,
               "full-training K=1 accuracy " + str(r.accuracy) + " != oracle " +
                   str(expected_accuracy));
    }
}

void criterion5(Problems& problems) {
    if (!heart_fixture_available()) {
        problems.push_back(kHeartHint);
        return;
    }
    const Dataset heart = load_heart();
    const Chromosome all = Chromosome::all_ones(heart.n_features());
    const std::uint64_t fold_seed = derive_seed(1, seed_stream::kFolds);

    KnnConfig cfg;
    cfg.normalization = NormMethod::MinMax;

    cfg.k = 5;
    const double acc5 = cross_validate(heart, all, cfg, 5, fold_seed).accuracy;
    expect(problems, std::abs(acc5 - 0.788) <= 0.05,
           "5-fold CV K=5 accuracy " + str(acc5) + " outside 0.788 +- 0.05");

    cfg.k = 1;
    const double acc1 = cross_validate(heart, all, cfg, 5, fold_seed).accuracy;
    expect(problems, std::abs(acc1 - 0.7296) <= 0.05,
           "5-fold CV K=1 accuracy " + str(acc1) + " outside 0.7296 +- 0.05");
}

// --------------------------------------------------------------------------
// criterion 6: baseline dominance on the fixture datasets
// --------------------------------------------------------------------------

void criterion6(Problems& problems) {
    // weather (file fixture) and synthetic heart-AP
    std::vector<ExperimentSpec> specs(2);
    specs[0].data_path = fixture("weather.arff");
    specs[1].synthetic = "heart_ap";
    specs[1].synth_n = 40;

    for (const auto& spec : specs) {
        const Report r = run_experiment(spec);
        expect(problems, r.with_ga_fitness >= r.without_ga_fitness,
               r.dataset.name + ": with-GA fitness estimate " + str(r.with_ga_fitness) +
                   " < without-GA " + str(r.without_ga_fitness));

        // the underlying guarantee: the search never returns a mask whose
        // fitness estimate falls below the seeded all-ones baseline
        KnnConfig fitness_cfg = spec.knn;
        fitness_cfg.k = spec.ks.front();
        const Dataset d = load_dataset(spec);
        const auto fitness =
            make_wrapper_fitness(d, fitness_cfg, kWrapperFitnessFolds,
                                 derive_seed(spec.master_seed, seed_stream::kFitness));
        expect(problems,
               fitness(r.selected_mask) >= fitness(Chromosome::all_ones(d.n_features())),
               r.dataset.name + ": selected mask scores below the all-attribute baseline");
    }
}

// --------------------------------------------------------------------------
// criterion 7: CLI contract
// --------------------------------------------------------------------------

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli_main(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

void criterion7(Problems& problems) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "gaknn_acceptance_cli";
    fs::remove_all(dir);
    fs::create_directories(dir);

    // synth -> validate pipeline
    const std::string arff = (dir / "heart_ap.arff").string();
    expect(problems, cli({"synth", "--n", "40", "--seed", "1", "--out", arff}).code == 0,
           "synth exit code != 0");
    expect(problems, cli({"validate", arff}).code == 0, "validate exit code != 0");

    // run with a spec file
    const std::string spec_path = (dir / "spec.txt").string();
    detail::write_file(spec_path, "data.path = " + fixture("weather.arff") + "\nknn.k = 1,3\n");
    const CliResult run = cli({"run", "--spec", spec_path, "--out", (dir / "out").string()});
    expect(problems, run.code == 0, "run exit code " + str(run.code) + " != 0");

    // emitted CSV round-trips to the same accuracy grid
    std::istringstream lines(run.out);
    std::string md_path, csv_path;
    std::getline(lines, md_path);
    std::getline(lines, csv_path);
    if (!fs::exists(csv_path)) {
        problems.push_back("run did not report an existing CSV path");
    } else {
        ExperimentSpec spec = parse_experiment_spec(detail::read_file(spec_path));
        const Report direct = run_experiment(spec);
        const auto cells = parse_report_csv(detail::read_file(csv_path));
        expect(problems, cells == direct.grid,
               "CSV grid does not round-trip to the in-process report grid");
    }

    // error paths
    expect(problems, cli({"eval", "--data", (dir / "missing.arff").string()}).code == kExitData,
           "eval on a missing file should exit 3");
    const CliResult missing = cli({"eval", "--data", (dir / "missing.arff").string()});
    expect(problems, missing.err.find("missing.arff") != std::string::npos,
           "eval error message should name the missing path");
    expect(problems, cli({"eval", "--bogus-flag"}).code == kExitConfig,
           "unknown flag should exit 2");
    expect(problems, cli({"unknown-subcommand"}).code == kExitConfig,
           "unknown subcommand should exit 2");
    const std::string bad_spec = (dir / "bad_spec.txt").string();
    detail::write_file(bad_spec, "nope = 1\n");
    expect(problems, cli({"run", "--spec", bad_spec}).code == kExitConfig,
           "invalid spec should exit 2");
    expect(problems,
           cli({"validate", fixture("bad/arity_mismatch.arff")}).code == kExitData,
           "validate on a malformed file should exit 3");

    // happy eval and rank
    const CliResult eval = cli({"eval", "--data", fixture("weather.arff"), "--k", "1"});
    expect(problems, eval.code == 0 && eval.out.find("accuracy: 1") != std::string::npos,
           "eval on weather at K=1 should report accuracy 1");
    const CliResult rank = cli({"rank", "--data", fixture("weather.arff"), "--generations",
                                "5", "--population", "10"});
    expect(problems, rank.code == 0 && rank.out.find("outlook") != std::string::npos,
           "rank should list weather attributes");

    fs::remove_all(dir);
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string title;
        std::function<void(Problems&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "property suite (metric axioms, normalization, folds, operators, determinism)",
         criterion1},
        {2, "OneMax oracle reaches 1.0 with default parameters", criterion2},
        {3, "weather: GA matches the exhaustive-subset oracle", criterion3},
        {4, "statlog heart: full-training K=1 accuracy 1.0 (self-inclusion)", criterion4},
        {5, "statlog heart: 5-fold CV accuracy 0.788 +- 0.05 (K=5), 0.7296 +- 0.05 (K=1)",
         criterion5},
        {6, "baseline dominance: with-GA fitness estimate >= without-GA", criterion6},
        {7, "CLI contract: exit codes and CSV round-trip", criterion7},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Problems problems;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(problems);
        } catch (const std::exception& e) {
            problems.push_back(std::string("unhandled exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        std::printf("%s criterion %d: %s (%.2fs)\n", problems.empty() ? "PASS" : "FAIL", c.id,
                    c.title.c_str(), secs);
        for (const auto& p : problems) std::printf("       - %s\n", p.c_str());
        if (!problems.empty()) ++failed;
    }
    return failed;
}
