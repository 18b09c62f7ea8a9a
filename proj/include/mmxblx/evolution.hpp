#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "mmxblx/core.hpp"
#include "mmxblx/crossover.hpp"

namespace mmxblx::evolution {

struct GaConfig {
    std::size_t population_size = 50; // must be >= 2 and even
    std::size_t generations = 5000;
    CrossoverParams crossover;
    std::uint64_t seed = 0;
    unsigned threads = 1; // parallel fitness evaluation; never changes results
};

/// Per-generation log record: penalty summary of the post-selection
/// population, bag-draw tallies of the generation's offspring, and the
/// occupancy histogram of task-0 feature ids across the population.
struct GenerationStats {
    std::size_t generation = 0;
    double best_penalty = 0.0;
    double mean_penalty = 0.0;
    std::vector<crossover::DrawTally> tallies; // summed per task
    std::map<int, std::uint64_t> sensor_histogram;
};

using FitnessFn = std::function<double(const Chromosome&)>;

/// Random valid chromosomes: per task a uniform length (linked groups share
/// one draw from the group's lowest-indexed task), ids sampled without
/// replacement, attributes uniform within schema bounds.
std::vector<Chromosome> init_population(const std::vector<TaskSpec>& specs,
                                        const LinkedGroups& groups, std::size_t population_size,
                                        RandomSource& rng);

struct Offspring {
    std::vector<Chromosome> chromosomes;
    std::vector<crossover::DrawTally> tallies; // summed per task
};

/// Shuffles the population, mates consecutive pairs, and produces two
/// offspring per pair via independent crossover calls. Every random stream is
/// derived from (seed, generation, pair, offspring), so the schedule of
/// evaluation cannot change results.
Offspring pair_and_reproduce(const std::vector<Chromosome>& pop,
                             const std::vector<TaskSpec>& specs, const LinkedGroups& groups,
                             const CrossoverParams& params, std::uint64_t seed,
                             std::size_t generation);

/// Elitist truncation: parents and offspring compete; the pool is stably
/// sorted by penalty ascending with offspring winning ties, and the top
/// population_size survive. Throws if any penalty is unevaluated.
std::vector<Chromosome> select(const std::vector<Chromosome>& parents,
                               const std::vector<Chromosome>& offspring,
                               std::size_t population_size);

struct RunResult {
    std::vector<Chromosome> population;
    std::vector<GenerationStats> history;
};

/// Runs the full generational loop. on_generation, when set, is called once
/// per generation after selection.
RunResult run(const GaConfig& config, const FitnessFn& fitness,
              const std::vector<TaskSpec>& specs, const LinkedGroups& groups,
              const std::function<void(const GenerationStats&)>& on_generation = nullptr);

} // namespace mmxblx::evolution
