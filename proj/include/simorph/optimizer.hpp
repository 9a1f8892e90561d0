#pragma once

#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "simorph/image.hpp"
#include "simorph/measures.hpp"
#include "simorph/morphology.hpp"
#include "simorph/rng.hpp"

namespace simorph {

/// Candidate filter pipeline: 1..max_stages (op, size) genes.
struct Genome {
    std::vector<OpStep> ops;

    FilterSpec as_filter_spec(SEShape shape) const {
        FilterSpec spec;
        spec.kind = FilterKind::op_sequence;
        spec.ops = ops;
        spec.se_shape = shape;
        return spec;
    }

    std::string to_string() const {
        return as_filter_spec(SEShape::square).to_string();
    }

    friend bool operator==(const Genome&, const Genome&) = default;
    friend auto operator<=>(const Genome&, const Genome&) = default;
};

struct GAConfig {
    int population_size = 20;
    int generations = 50;
    int max_stages = 4;
    int max_se_size = 5;
    double mutation_rate = 0.1;
    double crossover_rate = 0.7;
    int tournament_size = 3;
    std::uint64_t seed = 0;
    FilterSpec reference_spec{FilterKind::center, 1, {}, SEShape::square};
    int r_max = 15;
    MstarAggregation aggregation = MstarAggregation::elementwise_volume;
    SEShape se_shape = SEShape::square;

    void validate() const {
        if (population_size < 1) throw std::invalid_argument("GAConfig: population_size >= 1");
        if (generations < 1) throw std::invalid_argument("GAConfig: generations >= 1");
        if (max_stages < 1) throw std::invalid_argument("GAConfig: max_stages >= 1");
        if (max_se_size < 1) throw std::invalid_argument("GAConfig: max_se_size >= 1");
        if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
            throw std::invalid_argument("GAConfig: mutation_rate in [0, 1]");
        }
        if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
            throw std::invalid_argument("GAConfig: crossover_rate in [0, 1]");
        }
        if (tournament_size < 1 || tournament_size > population_size) {
            throw std::invalid_argument("GAConfig: 1 <= tournament_size <= population_size");
        }
        if (r_max < 0) throw std::invalid_argument("GAConfig: r_max >= 0");
        reference_spec.validate();
    }

    void check_genome(const Genome& g) const {
        if (g.ops.empty() || g.ops.size() > static_cast<std::size_t>(max_stages)) {
            throw std::invalid_argument("Genome: stage count outside 1..max_stages");
        }
        for (const OpStep& s : g.ops) {
            if (s.size < 1 || s.size > max_se_size) {
                throw std::invalid_argument("Genome: SE size outside 1..max_se_size");
            }
        }
    }
};

/// Sentinel assigned to genomes whose output reproduces the input exactly;
/// the measure would give them the ideal score 0, which is its known
/// degenerate case.
inline constexpr std::uint64_t kWorstFitness = std::numeric_limits<std::uint64_t>::max();

/// M* of the genome's pipeline against the fixed reference filter.
/// Lower is better.
inline std::uint64_t fitness(const Genome& genome, const Image& n, const GAConfig& cfg) {
    cfg.check_genome(genome);
    const Image out = apply_filter(n, genome.as_filter_spec(cfg.se_shape));
    if (out == n) return kWorstFitness;
    const Image ref = apply_filter(n, cfg.reference_spec);
    return measure_mstar(n, out, ref, cfg.r_max, cfg.se_shape, cfg.aggregation);
}

struct GenerationStats {
    int generation = 0;
    std::uint64_t best_fitness = kWorstFitness;
    double mean_fitness = 0.0;
    int reference_mimics = 0;  // genomes whose output equals the reference output
};

struct EvolveResult {
    Genome best;
    std::uint64_t best_fitness = kWorstFitness;
    std::vector<GenerationStats> history;
};

inline std::string history_to_csv(const std::vector<GenerationStats>& history) {
    std::string out = "generation,best_fitness,mean_fitness\n";
    char buf[64];
    for (const GenerationStats& s : history) {
        out += std::to_string(s.generation);
        out += ',';
        out += std::to_string(s.best_fitness);
        out += ',';
        std::snprintf(buf, sizeof buf, "%.3f", s.mean_fitness);
        out += buf;
        out += '\n';
    }
    return out;
}

namespace detail {

class GenomeEvaluator {
public:
    GenomeEvaluator(const Image& n, const GAConfig& cfg)
        : n_(n), cfg_(cfg), ref_out_(apply_filter(n, cfg.reference_spec)) {}

    std::uint64_t fitness_of(const Genome& g) {
        cfg_.check_genome(g);
        if (const auto it = memo_.find(g); it != memo_.end()) return it->second;
        const Image out = apply_filter(n_, g.as_filter_spec(cfg_.se_shape));
        std::uint64_t fit;
        if (out == n_) {
            fit = kWorstFitness;
        } else {
            const WeightedSiRows a =
                weighted_si_rows(abs_diff(n_, out), cfg_.r_max, cfg_.se_shape);
            const WeightedSiRows b =
                weighted_si_rows(abs_diff(out, ref_out_), cfg_.r_max, cfg_.se_shape);
            fit = mstar_combine(a, b, cfg_.aggregation);
        }
        memo_.emplace(g, fit);
        if (out == ref_out_) mimics_.emplace(g, true);
        return fit;
    }

    bool mimics_reference(const Genome& g) const { return mimics_.count(g) != 0; }

private:
    const Image& n_;
    const GAConfig& cfg_;
    Image ref_out_;
    std::map<Genome, std::uint64_t> memo_;
    std::map<Genome, bool> mimics_;
};

inline Genome random_genome(SplitMix64& rng, const GAConfig& cfg) {
    Genome g;
    const std::size_t len = 1 + rng.next_below(static_cast<std::uint64_t>(cfg.max_stages));
    g.ops.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        OpStep step{};
        step.op = rng.next_bool() ? MorphOp::close : MorphOp::open;
        step.size = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(cfg.max_se_size)));
        g.ops.push_back(step);
    }
    return g;
}

inline void mutate(Genome& g, SplitMix64& rng, const GAConfig& cfg) {
    for (OpStep& step : g.ops) {
        if (rng.next_unit() < cfg.mutation_rate) {
            if (rng.next_bool()) {
                step.op = rng.next_bool() ? MorphOp::close : MorphOp::open;
            } else {
                step.size =
                    1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(cfg.max_se_size)));
            }
        }
    }
}

/// One-point crossover with independent cut points; an empty child falls
/// back to a copy of its leading parent, and overlong children are
/// truncated to max_stages, so offspring always satisfy the genome bounds.
inline std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, SplitMix64& rng,
                                           const GAConfig& cfg) {
    const std::size_t cut_a = rng.next_below(a.ops.size() + 1);
    const std::size_t cut_b = rng.next_below(b.ops.size() + 1);
    Genome c1;
    c1.ops.assign(a.ops.begin(), a.ops.begin() + static_cast<std::ptrdiff_t>(cut_a));
    c1.ops.insert(c1.ops.end(), b.ops.begin() + static_cast<std::ptrdiff_t>(cut_b), b.ops.end());
    Genome c2;
    c2.ops.assign(b.ops.begin(), b.ops.begin() + static_cast<std::ptrdiff_t>(cut_b));
    c2.ops.insert(c2.ops.end(), a.ops.begin() + static_cast<std::ptrdiff_t>(cut_a), a.ops.end());
    if (c1.ops.empty()) c1 = a;
    if (c2.ops.empty()) c2 = b;
    if (c1.ops.size() > static_cast<std::size_t>(cfg.max_stages)) {
        c1.ops.resize(static_cast<std::size_t>(cfg.max_stages));
    }
    if (c2.ops.size() > static_cast<std::size_t>(cfg.max_stages)) {
        c2.ops.resize(static_cast<std::size_t>(cfg.max_stages));
    }
    return {std::move(c1), std::move(c2)};
}

}  // namespace detail

/// Seeded, deterministic GA: tournament selection, one-point crossover,
/// per-gene mutation, elitism of one. Fitness is memoized per genome (it is
/// a pure function of the genome). Returns the best genome ever evaluated
/// plus per-generation statistics. An explicit initial population may be
/// supplied (it is truncated or topped up with random genomes to
/// population_size); by default the population is random.
inline EvolveResult evolve(const Image& n, const GAConfig& cfg,
                           const std::vector<Genome>& initial_population = {}) {
    cfg.validate();
    for (const Genome& g : initial_population) cfg.check_genome(g);

    SplitMix64 rng(cfg.seed);
    detail::GenomeEvaluator eval(n, cfg);

    std::vector<Genome> pop(initial_population.begin(), initial_population.end());
    if (pop.size() > static_cast<std::size_t>(cfg.population_size)) {
        pop.resize(static_cast<std::size_t>(cfg.population_size));
    }
    while (pop.size() < static_cast<std::size_t>(cfg.population_size)) {
        pop.push_back(detail::random_genome(rng, cfg));
    }

    EvolveResult result;
    std::vector<std::uint64_t> fits(pop.size());

    const auto tournament = [&](const std::vector<std::uint64_t>& f) -> std::size_t {
        std::size_t winner = rng.next_below(pop.size());
        for (int t = 1; t < cfg.tournament_size; ++t) {
            const std::size_t idx = rng.next_below(pop.size());
            if (f[idx] < f[winner]) winner = idx;
        }
        return winner;
    };

    for (int gen = 0; gen < cfg.generations; ++gen) {
        GenerationStats stats;
        stats.generation = gen;
        std::size_t gen_best = 0;
        long double mean_acc = 0.0L;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            fits[i] = eval.fitness_of(pop[i]);
            mean_acc += static_cast<long double>(fits[i]);
            if (fits[i] < fits[gen_best]) gen_best = i;
            if (eval.mimics_reference(pop[i])) ++stats.reference_mimics;
            if (fits[i] < result.best_fitness) {
                result.best_fitness = fits[i];
                result.best = pop[i];
            }
        }
        if (result.best_fitness == kWorstFitness && result.best.ops.empty()) {
            result.best = pop[gen_best];  // everything degenerate; still report one
        }
        stats.best_fitness = fits[gen_best];
        stats.mean_fitness = static_cast<double>(mean_acc / static_cast<long double>(pop.size()));
        result.history.push_back(stats);

        if (gen + 1 == cfg.generations) break;

        std::vector<Genome> next;
        next.reserve(pop.size());
        next.push_back(pop[gen_best]);  // elitism
        while (next.size() < pop.size()) {
            const Genome& pa = pop[tournament(fits)];
            const Genome& pb = pop[tournament(fits)];
            Genome c1 = pa;
            Genome c2 = pb;
            if (rng.next_unit() < cfg.crossover_rate) {
                std::tie(c1, c2) = detail::crossover(pa, pb, rng, cfg);
            }
            detail::mutate(c1, rng, cfg);
            detail::mutate(c2, rng, cfg);
            next.push_back(std::move(c1));
            if (next.size() < pop.size()) next.push_back(std::move(c2));
        }
        pop = std::move(next);
    }
    return result;
}

}  // namespace simorph
