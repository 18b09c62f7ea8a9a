#include "mmxblx/evolution.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace mmxblx::evolution {

namespace {

// stream tags for deriving independent sub-seeds from the run seed
constexpr std::uint64_t kStreamInit = 0x496e6974ULL;    // population initialization
constexpr std::uint64_t kStreamShuffle = 0x53687566ULL; // per-generation pairing shuffle
constexpr std::uint64_t kStreamCross = 0x43726f73ULL;   // per-offspring crossover

void evaluate_all(std::vector<Chromosome>& chroms, const FitnessFn& fitness, unsigned threads) {
    const auto eval_range = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < chroms.size(); i += stride)
            if (!chroms[i].penalty) chroms[i].penalty = fitness(chroms[i]);
    };
    if (threads <= 1 || chroms.size() < 2) {
        eval_range(0, 1);
        return;
    }
    const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(chroms.size()));
    std::vector<std::thread> workers;
    workers.reserve(n);
    for (unsigned t = 0; t < n; ++t) workers.emplace_back(eval_range, t, n);
    for (auto& w : workers) w.join();
}

} // namespace

std::vector<Chromosome> init_population(const std::vector<TaskSpec>& specs,
                                        const LinkedGroups& groups, std::size_t population_size,
                                        RandomSource& rng) {
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> group_of(specs.size(), npos);
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (const auto t : groups[g]) group_of[t] = g;

    std::vector<Chromosome> pop;
    pop.reserve(population_size);
    for (std::size_t c = 0; c < population_size; ++c) {
        Chromosome chrom;
        chrom.subs.resize(specs.size());
        std::vector<std::size_t> group_len(groups.size(), 0);
        std::vector<bool> group_drawn(groups.size(), false);
        for (std::size_t i = 0; i < specs.size(); ++i) {
            const auto& spec = specs[i];
            std::size_t len;
            const std::size_t g = group_of[i];
            if (g != npos) {
                if (!group_drawn[g]) {
                    group_len[g] = static_cast<std::size_t>(
                        rng.uniform_int(static_cast<std::int64_t>(spec.subset_min),
                                        static_cast<std::int64_t>(spec.subset_max)));
                    group_drawn[g] = true;
                }
                len = group_len[g];
            } else {
                len = static_cast<std::size_t>(
                    rng.uniform_int(static_cast<std::int64_t>(spec.subset_min),
                                    static_cast<std::int64_t>(spec.subset_max)));
            }
            const auto picks = rng.sample_indices(spec.universe_size(), len);
            chrom.subs[i].task_index = i;
            for (const auto p : picks) {
                Feature f;
                f.id = spec.feature_min + static_cast<int>(p);
                f.attributes = crossover::sample_absent(spec.schema, rng);
                chrom.subs[i].features.push_back(std::move(f));
            }
        }
        pop.push_back(std::move(chrom));
    }
    return pop;
}

Offspring pair_and_reproduce(const std::vector<Chromosome>& pop,
                             const std::vector<TaskSpec>& specs, const LinkedGroups& groups,
                             const CrossoverParams& params, std::uint64_t seed,
                             std::size_t generation) {
    if (pop.size() < 2 || pop.size() % 2 != 0)
        throw std::invalid_argument("pair_and_reproduce: population size must be even and >= 2");

    std::vector<std::size_t> order(pop.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    RandomSource shuffle_rng(derive_seed(seed, kStreamShuffle, generation));
    shuffle_rng.shuffle(order);

    Offspring out;
    out.chromosomes.reserve(pop.size());
    out.tallies.assign(specs.size(), {});
    for (std::size_t pair = 0; pair < pop.size() / 2; ++pair) {
        const Chromosome& a = pop[order[2 * pair]];
        const Chromosome& b = pop[order[2 * pair + 1]];
        for (std::size_t k = 0; k < 2; ++k) {
            RandomSource rng(derive_seed(seed ^ kStreamCross, generation, pair, k));
            auto result = crossover::crossover_chromosome(a, b, specs, params, groups, rng);
            for (std::size_t i = 0; i < specs.size(); ++i) out.tallies[i] += result.tallies[i];
            out.chromosomes.push_back(std::move(result.child));
        }
    }
    return out;
}

std::vector<Chromosome> select(const std::vector<Chromosome>& parents,
                               const std::vector<Chromosome>& offspring,
                               std::size_t population_size) {
    std::vector<const Chromosome*> pool;
    pool.reserve(parents.size() + offspring.size());
    // offspring first: the stable sort then keeps them ahead of parents on ties
    for (const auto& c : offspring) pool.push_back(&c);
    for (const auto& c : parents) pool.push_back(&c);
    for (const auto* c : pool)
        if (!c->penalty) throw std::invalid_argument("select: unevaluated chromosome");
    if (pool.size() < population_size)
        throw std::invalid_argument("select: pool smaller than population size");
    std::stable_sort(pool.begin(), pool.end(),
                     [](const Chromosome* a, const Chromosome* b) { return *a->penalty < *b->penalty; });
    std::vector<Chromosome> next;
    next.reserve(population_size);
    for (std::size_t i = 0; i < population_size; ++i) next.push_back(*pool[i]);
    return next;
}

RunResult run(const GaConfig& config, const FitnessFn& fitness,
              const std::vector<TaskSpec>& specs, const LinkedGroups& groups,
              const std::function<void(const GenerationStats&)>& on_generation) {
    if (config.population_size < 2 || config.population_size % 2 != 0)
        throw std::invalid_argument("run: population size must be even and >= 2");
    if (config.generations < 1) throw std::invalid_argument("run: generations must be >= 1");

    RandomSource init_rng(derive_seed(config.seed, kStreamInit));
    RunResult result;
    result.population = init_population(specs, groups, config.population_size, init_rng);
    evaluate_all(result.population, fitness, config.threads);

    for (std::size_t g = 1; g <= config.generations; ++g) {
        Offspring offspring = pair_and_reproduce(result.population, specs, groups,
                                                 config.crossover, config.seed, g);
        evaluate_all(offspring.chromosomes, fitness, config.threads);
        result.population = select(result.population, offspring.chromosomes,
                                   config.population_size);

        GenerationStats stats;
        stats.generation = g;
        stats.tallies = std::move(offspring.tallies);
        stats.best_penalty = *result.population.front().penalty;
        double sum = 0.0;
        for (const auto& c : result.population) {
            const double p = *c.penalty;
            sum += p;
            stats.best_penalty = std::min(stats.best_penalty, p);
        }
        stats.mean_penalty = sum / static_cast<double>(result.population.size());
        if (!specs.empty()) {
            for (const auto& c : result.population)
                for (const auto& f : c.subs[0].features) ++stats.sensor_histogram[f.id];
        }
        if (on_generation) on_generation(stats);
        result.history.push_back(std::move(stats));
    }
    return result;
}

} // namespace mmxblx::evolution
