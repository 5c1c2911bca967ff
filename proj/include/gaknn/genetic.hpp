#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gaknn/chromosome.hpp"
#include "gaknn/errors.hpp"
#include "gaknn/rng.hpp"

namespace gaknn {

enum class SelectionMethod { RouletteWheel, Rank, Tournament };
enum class CrossoverOp { SinglePoint, TwoPoint, Uniform };

inline const char* to_string(SelectionMethod m) {
    switch (m) {
        case SelectionMethod::RouletteWheel: return "roulette";
        case SelectionMethod::Rank: return "rank";
        case SelectionMethod::Tournament: return "tournament";
    }
    return "?";
}

inline const char* to_string(CrossoverOp op) {
    switch (op) {
        case CrossoverOp::SinglePoint: return "single_point";
        case CrossoverOp::TwoPoint: return "two_point";
        case CrossoverOp::Uniform: return "uniform";
    }
    return "?";
}

struct GaConfig {
    double crossover_prob = 0.6;
    double mutation_prob = 0.033;
    int population_size = 20;
    int max_generations = 20;
    int report_frequency = 20;
    std::uint64_t seed = 1;
    SelectionMethod selection = SelectionMethod::RouletteWheel;
    int tournament_size = 3;
    CrossoverOp crossover = CrossoverOp::SinglePoint;
    int elitism_count = 1;
    bool use_fitness_cache = true;  ///< dedupe evaluations by chromosome bits

    void validate() const {
        if (crossover_prob < 0.0 || crossover_prob > 1.0)
            throw ConfigError("crossover probability must be in [0,1]");
        if (mutation_prob < 0.0 || mutation_prob > 1.0)
            throw ConfigError("mutation probability must be in [0,1]");
        if (population_size < 1) throw ConfigError("population size must be >= 1");
        if (max_generations < 0) throw ConfigError("max generations must be >= 0");
        if (report_frequency < 1) throw ConfigError("report frequency must be >= 1");
        if (tournament_size < 1) throw ConfigError("tournament size must be >= 1");
        if (elitism_count < 0 || elitism_count >= population_size)
            throw ConfigError("elitism count must be in [0, population size)");
    }
};

struct GenerationRecord {
    int generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    Chromosome best;

    bool operator==(const GenerationRecord&) const = default;
};

struct GaRun {
    std::vector<GenerationRecord> records;  ///< one per generation, 0..max
    std::vector<Chromosome> final_population;
    std::vector<double> final_fitness;
    std::size_t fitness_evaluations = 0;  ///< actual fitness-function calls
    Chromosome best;                      ///< best chromosome seen over the whole run
    double best_fitness = 0.0;

    bool operator==(const GaRun&) const = default;
};

/// Per-feature score in [0,1] plus a rank order over feature indices.
struct AttributeRanking {
    std::vector<double> scores;        ///< fitness-weighted selection frequency
    std::vector<std::size_t> order;    ///< feature indices, descending score

    bool operator==(const AttributeRanking&) const = default;
};

namespace detail {

inline void repair_empty(Chromosome& c, Rng& rng) {
    if (!c.any() && c.size() > 0) c.set(uniform_index(rng, c.size()));
}

inline std::pair<Chromosome, Chromosome> single_point(const Chromosome& p1, const Chromosome& p2,
                                                      std::size_t cut) {
    Chromosome c1 = p1, c2 = p2;
    for (std::size_t i = cut; i < p1.size(); ++i) {
        c1.set(i, p2.test(i));
        c2.set(i, p1.test(i));
    }
    return {c1, c2};
}

inline std::pair<Chromosome, Chromosome> two_point(const Chromosome& p1, const Chromosome& p2,
                                                   std::size_t a, std::size_t b) {
    Chromosome c1 = p1, c2 = p2;
    for (std::size_t i = a; i < b; ++i) {
        c1.set(i, p2.test(i));
        c2.set(i, p1.test(i));
    }
    return {c1, c2};
}

inline std::pair<Chromosome, Chromosome> uniform_cross(const Chromosome& p1, const Chromosome& p2,
                                                       Rng& rng) {
    Chromosome c1 = p1, c2 = p2;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (bernoulli(rng, 0.5)) {
            c1.set(i, p2.test(i));
            c2.set(i, p1.test(i));
        }
    }
    return {c1, c2};
}

/// Applies the chosen operator unconditionally, without empty-mask repair.
inline std::pair<Chromosome, Chromosome> cross_bits(const Chromosome& p1, const Chromosome& p2,
                                                    CrossoverOp op, Rng& rng) {
    const std::size_t len = p1.size();
    switch (op) {
        case CrossoverOp::SinglePoint: {
            if (len < 2) return {p1, p2};  // no interior cut point exists
            return single_point(p1, p2, 1 + uniform_index(rng, len - 1));
        }
        case CrossoverOp::TwoPoint: {
            // Needs two distinct interior cut points; shorter chromosomes
            // degrade to the single possible cut, or to copies.
            if (len < 2) return {p1, p2};
            if (len < 3) return single_point(p1, p2, 1);
            std::size_t a = 1 + uniform_index(rng, len - 1);
            std::size_t b = 1 + uniform_index(rng, len - 2);
            if (b >= a) ++b;
            if (a > b) std::swap(a, b);
            return two_point(p1, p2, a, b);
        }
        case CrossoverOp::Uniform: return uniform_cross(p1, p2, rng);
    }
    return {p1, p2};
}

}  // namespace detail

/// Seeded initial population: index 0 is the all-ones chromosome (the
/// full-attribute baseline), the rest are uniform random bit strings with
/// empty masks repaired.
inline std::vector<Chromosome> init_population(const GaConfig& cfg, std::size_t n_features) {
    cfg.validate();
    if (n_features < 1) throw ConfigError("population needs at least one feature");
    Rng rng = make_rng(derive_seed(cfg.seed, 0));
    std::vector<Chromosome> pop;
    pop.reserve(static_cast<std::size_t>(cfg.population_size));
    pop.push_back(Chromosome::all_ones(n_features));
    while (pop.size() < static_cast<std::size_t>(cfg.population_size)) {
        Chromosome c(n_features);
        for (std::size_t i = 0; i < n_features; ++i) c.set(i, bernoulli(rng, 0.5));
        detail::repair_empty(c, rng);
        pop.push_back(std::move(c));
    }
    return pop;
}

/// Selects a parent index. RouletteWheel draws proportional to fitness
/// (uniform when all fitness is zero); Rank draws proportional to 1-based
/// ascending rank; Tournament returns the fittest of tournament_size uniform
/// draws with replacement.
inline std::size_t select_index(std::span<const double> fitnesses, SelectionMethod method,
                                int tournament_size, Rng& rng) {
    if (fitnesses.empty()) throw EmptyPopulation();
    for (double f : fitnesses)
        if (f < 0.0) throw DataError("selection requires non-negative fitness");

    const std::size_t n = fitnesses.size();
    switch (method) {
        case SelectionMethod::RouletteWheel: {
            double total = 0.0;
            for (double f : fitnesses) total += f;
            if (total == 0.0) return uniform_index(rng, n);
            const double u = uniform01(rng) * total;
            double cum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                cum += fitnesses[i];
                if (u < cum) return i;
            }
            return n - 1;
        }
        case SelectionMethod::Rank: {
            std::vector<std::size_t> by_fitness(n);
            for (std::size_t i = 0; i < n; ++i) by_fitness[i] = i;
            std::sort(by_fitness.begin(), by_fitness.end(), [&](std::size_t x, std::size_t y) {
                if (fitnesses[x] != fitnesses[y]) return fitnesses[x] < fitnesses[y];
                return x < y;
            });
            const double total = static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;
            const double u = uniform01(rng) * total;
            double cum = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                cum += static_cast<double>(r + 1);
                if (u < cum) return by_fitness[r];
            }
            return by_fitness[n - 1];
        }
        case SelectionMethod::Tournament: {
            std::size_t best = uniform_index(rng, n);
            for (int t = 1; t < tournament_size; ++t) {
                const std::size_t i = uniform_index(rng, n);
                if (fitnesses[i] > fitnesses[best] ||
                    (fitnesses[i] == fitnesses[best] && i < best))
                    best = i;
            }
            return best;
        }
    }
    return 0;
}

inline const Chromosome& select(const std::vector<Chromosome>& population,
                                std::span<const double> fitnesses, SelectionMethod method,
                                int tournament_size, Rng& rng) {
    if (population.size() != fitnesses.size())
        throw LengthMismatch("population and fitness list differ in length");
    return population[select_index(fitnesses, method, tournament_size, rng)];
}

/// With probability 1-prob returns copies of the parents; otherwise applies
/// the operator. Children with no bit set are repaired by setting one random
/// bit, so the result is always a pair of valid chromosomes.
inline std::pair<Chromosome, Chromosome> crossover(const Chromosome& p1, const Chromosome& p2,
                                                   CrossoverOp op, double prob, Rng& rng) {
    if (p1.size() != p2.size()) throw LengthMismatch("crossover parents differ in length");
    if (prob < 0.0 || prob > 1.0) throw ConfigError("crossover probability must be in [0,1]");
    if (prob == 0.0 || !bernoulli(rng, prob)) return {p1, p2};
    auto [c1, c2] = detail::cross_bits(p1, p2, op, rng);
    detail::repair_empty(c1, rng);
    detail::repair_empty(c2, rng);
    return {c1, c2};
}

/// Flips each bit independently with the given probability; repairs an
/// all-zero result.
inline Chromosome mutate(const Chromosome& c, double prob, Rng& rng) {
    if (prob < 0.0 || prob > 1.0) throw ConfigError("mutation probability must be in [0,1]");
    Chromosome out = c;
    if (prob > 0.0)
        for (std::size_t i = 0; i < out.size(); ++i)
            if (bernoulli(rng, prob)) out.flip(i);
    detail::repair_empty(out, rng);
    return out;
}

/// Generational GA over attribute masks. Evaluates the seeded initial
/// population, then per generation carries the elitism_count fittest forward
/// unchanged and fills the remainder through select -> crossover -> mutate.
/// Fitness values are cached by chromosome bits, so re-encountering a mask is
/// free. Breeding randomness comes from per-(generation, slot) derived
/// streams; fitness evaluation order can never perturb the run.
///
/// fitness_fn must be a pure deterministic map from chromosome to [0,1].
inline GaRun run_ga(const GaConfig& cfg, std::size_t n_features,
                    const std::function<double(const Chromosome&)>& fitness_fn) {
    cfg.validate();

    std::unordered_map<std::string, double> cache;
    std::size_t evaluations = 0;
    auto evaluate = [&](const Chromosome& c) -> double {
        const std::string key = c.to_string();
        if (cfg.use_fitness_cache) {
            if (auto it = cache.find(key); it != cache.end()) return it->second;
        }
        double f;
        try {
            f = fitness_fn(c);
        } catch (const std::exception& e) {
            throw DataError("fitness evaluation failed for chromosome " + key + ": " + e.what());
        }
        if (!(f >= 0.0 && f <= 1.0))
            throw DataError("fitness for chromosome " + key + " is outside [0,1]");
        ++evaluations;
        if (cfg.use_fitness_cache) cache.emplace(key, f);
        return f;
    };

    std::vector<Chromosome> pop = init_population(cfg, n_features);
    std::vector<double> fits(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) fits[i] = evaluate(pop[i]);

    GaRun run;
    auto record = [&](int gen) {
        GenerationRecord rec;
        rec.generation = gen;
        std::size_t best = 0;
        double mean = 0.0;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            mean += fits[i];
            if (fits[i] > fits[best]) best = i;
        }
        rec.mean_fitness = mean / static_cast<double>(pop.size());
        rec.best_fitness = fits[best];
        rec.best = pop[best];
        if (run.records.empty() || rec.best_fitness > run.best_fitness) {
            run.best_fitness = rec.best_fitness;
            run.best = rec.best;
        }
        run.records.push_back(std::move(rec));
    };
    record(0);

    for (int gen = 1; gen <= cfg.max_generations; ++gen) {
        std::vector<Chromosome> next;
        next.reserve(pop.size());

        if (cfg.elitism_count > 0) {
            std::vector<std::size_t> order(pop.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
                if (fits[x] != fits[y]) return fits[x] > fits[y];
                return x < y;
            });
            for (int e = 0; e < cfg.elitism_count; ++e) next.push_back(pop[order[e]]);
        }

        std::uint64_t slot = 0;
        while (next.size() < pop.size()) {
            Rng rng = slot_rng(cfg.seed, static_cast<std::uint64_t>(gen), slot++);
            const Chromosome& p1 =
                select(pop, fits, cfg.selection, cfg.tournament_size, rng);
            const Chromosome& p2 =
                select(pop, fits, cfg.selection, cfg.tournament_size, rng);
            auto [c1, c2] = crossover(p1, p2, cfg.crossover, cfg.crossover_prob, rng);
            next.push_back(mutate(c1, cfg.mutation_prob, rng));
            if (next.size() < pop.size()) next.push_back(mutate(c2, cfg.mutation_prob, rng));
        }

        pop = std::move(next);
        for (std::size_t i = 0; i < pop.size(); ++i) fits[i] = evaluate(pop[i]);
        record(gen);
    }

    run.final_population = std::move(pop);
    run.final_fitness = std::move(fits);
    run.fitness_evaluations = evaluations;
    return run;
}

/// Progress lines honoring the report frequency: one entry per multiple of
/// report_frequency plus the terminal generation.
inline std::vector<GenerationRecord> progress_records(const GaRun& run, int report_frequency) {
    std::vector<GenerationRecord> out;
    for (const auto& rec : run.records) {
        const bool scheduled = report_frequency > 0 && rec.generation % report_frequency == 0;
        const bool terminal = &rec == &run.records.back();
        if (scheduled || terminal) {
            if (!out.empty() && out.back().generation == rec.generation) continue;
            out.push_back(rec);
        }
    }
    return out;
}

/// Fitness-weighted selection frequency of each attribute over the final
/// population: score(j) = sum_i fitness_i * bit_ij / sum_i fitness_i, with
/// uniform weights when every fitness is zero. Rank order is descending
/// score, ties broken by lower attribute index.
inline AttributeRanking rank_attributes(const GaRun& run) {
    if (run.final_population.empty()) throw EmptyPopulation();
    const std::size_t n = run.final_population[0].size();
    const std::size_t pop = run.final_population.size();

    double total = 0.0;
    for (double f : run.final_fitness) total += f;

    AttributeRanking ranking;
    ranking.scores.assign(n, 0.0);
    for (std::size_t i = 0; i < pop; ++i) {
        const double w = total > 0.0 ? run.final_fitness[i] / total
                                     : 1.0 / static_cast<double>(pop);
        for (std::size_t j = 0; j < n; ++j)
            if (run.final_population[i].test(j)) ranking.scores[j] += w;
    }
    for (double& s : ranking.scores) s = std::min(std::max(s, 0.0), 1.0);

    ranking.order.resize(n);
    for (std::size_t j = 0; j < n; ++j) ranking.order[j] = j;
    std::sort(ranking.order.begin(), ranking.order.end(), [&](std::size_t x, std::size_t y) {
        if (ranking.scores[x] != ranking.scores[y]) return ranking.scores[x] > ranking.scores[y];
        return x < y;
    });
    return ranking;
}

struct PrunePolicy {
    enum class Kind { KeepTopM, ScoreThreshold, BestChromosome };
    Kind kind = Kind::BestChromosome;
    int m = 1;           ///< KeepTopM
    double tau = 0.5;    ///< ScoreThreshold

    void validate() const {
        if (kind == Kind::KeepTopM && m < 1) throw ConfigError("keep-top-m requires m >= 1");
        if (kind == Kind::ScoreThreshold && (tau < 0.0 || tau > 1.0))
            throw ConfigError("score threshold must be in [0,1]");
    }
};

inline const char* to_string(PrunePolicy::Kind k) {
    switch (k) {
        case PrunePolicy::Kind::KeepTopM: return "keep_top_m";
        case PrunePolicy::Kind::ScoreThreshold: return "score_threshold";
        case PrunePolicy::Kind::BestChromosome: return "best_chromosome";
    }
    return "?";
}

struct PruneResult {
    Chromosome mask;
    /// True when the policy would have retained nothing and the single
    /// top-ranked attribute was kept instead.
    bool degenerate_fallback = false;
};

/// Turns a ranking into a retained-attribute mask. A policy that would retain
/// zero attributes keeps the top-ranked one and flags the fallback.
inline PruneResult prune(const AttributeRanking& ranking, const PrunePolicy& policy,
                         const std::optional<Chromosome>& best_chromosome = std::nullopt) {
    policy.validate();
    const std::size_t n = ranking.scores.size();
    if (n == 0) throw EmptyInput("ranking covers no attributes");

    PruneResult result;
    switch (policy.kind) {
        case PrunePolicy::Kind::BestChromosome: {
            if (!best_chromosome)
                throw ConfigError("best-chromosome pruning requires the run's best chromosome");
            if (best_chromosome->size() != n)
                throw MaskLengthError(n, best_chromosome->size());
            result.mask = *best_chromosome;
            break;
        }
        case PrunePolicy::Kind::KeepTopM: {
            result.mask = Chromosome(n);
            const std::size_t m = std::min(static_cast<std::size_t>(policy.m), n);
            for (std::size_t r = 0; r < m; ++r) result.mask.set(ranking.order[r]);
            break;
        }
        case PrunePolicy::Kind::ScoreThreshold: {
            result.mask = Chromosome(n);
            for (std::size_t j = 0; j < n; ++j)
                if (ranking.scores[j] >= policy.tau) result.mask.set(j);
            break;
        }
    }
    if (!result.mask.any()) {
        result.mask.set(ranking.order[0]);
        result.degenerate_fallback = true;
    }
    return result;
}

}  // namespace gaknn
