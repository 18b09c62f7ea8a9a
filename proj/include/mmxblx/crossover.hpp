#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mmxblx/blx.hpp"
#include "mmxblx/core.hpp"

namespace mmxblx::crossover {

/// The three-way feature partition of a parent pair for one task, with
/// already-modified attribute vectors. The three id-sets are pairwise
/// disjoint and cover the task's whole feature universe; each bag holds at
/// most one instance per id.
struct FeatureBags {
    std::vector<Feature> common; // in both parents, attributes beta-blended
    std::vector<Feature> unique; // in exactly one parent, attributes gamma-perturbed
    std::vector<Feature> absent; // in neither parent, attributes freshly sampled
};

/// Counts of offspring features by source bag. A draw from the absent bag is
/// a mutation event.
struct DrawTally {
    std::uint64_t from_common = 0;
    std::uint64_t from_unique = 0;
    std::uint64_t from_absent = 0;

    std::uint64_t total() const { return from_common + from_unique + from_absent; }
    DrawTally& operator+=(const DrawTally& o) {
        from_common += o.from_common;
        from_unique += o.from_unique;
        from_absent += o.from_absent;
        return *this;
    }
};

/// Id-wise partition before attribute modification. Parents are not touched.
struct RawPartition {
    struct CommonEntry {
        int id;
        std::vector<double> att1; // parent 1's attributes
        std::vector<double> att2; // parent 2's attributes
    };
    struct UniqueEntry {
        int id;
        std::vector<double> att; // the owning parent's attributes
    };
    std::vector<CommonEntry> common;
    std::vector<UniqueEntry> unique;
    std::vector<int> absent;
};

/// Offspring sub-chromosome length: a flat (a=0) blend over the parental
/// lengths extended by alpha on each side, clamped into
/// [subset_min, subset_max] and rounded to an integer.
std::size_t offspring_length(std::size_t len1, std::size_t len2, const TaskSpec& spec,
                             double alpha, RandomSource& rng);

RawPartition partition(const SubChromosome& p1, const SubChromosome& p2, const TaskSpec& spec);

/// Common-feature attributes: BLX with extension beta over the two parental
/// vectors, within schema bounds.
std::vector<double> blend_common(const std::vector<double>& att1, const std::vector<double>& att2,
                                 const AttributeSchema& schema, double beta, RandomSource& rng);

/// Unique-feature attributes: per element a flat blend over
/// [att - range*gamma/2, att + range*gamma/2], range being the schema span.
std::vector<double> perturb_unique(const std::vector<double>& att, const AttributeSchema& schema,
                                   double gamma, RandomSource& rng);

/// Absent-feature attributes: uniform within the schema bounds.
std::vector<double> sample_absent(const AttributeSchema& schema, RandomSource& rng);

/// Partition plus per-bag attribute modification, in one step.
FeatureBags build_bags(const SubChromosome& p1, const SubChromosome& p2, const TaskSpec& spec,
                       const CrossoverParams& params, RandomSource& rng);

/// Exploit inheritance: drains the common bag first (positive respect), then
/// fills remaining slots from unique/absent with probability delta per the
/// configured orientation. Draws are uniform without replacement.
std::pair<std::vector<Feature>, DrawTally> inherit_exploit(FeatureBags bags,
                                                           std::size_t target_len, double delta,
                                                           DeltaSelects sel, RandomSource& rng);

/// Explore inheritance: per slot chooses between common and absent with
/// probability delta while both are non-empty, falling back per the
/// procedure's empty-bag rules. Sacrifices respect for a quasi-constant
/// mutation rate.
std::pair<std::vector<Feature>, DrawTally> inherit_explore(FeatureBags bags,
                                                           std::size_t target_len, double delta,
                                                           DeltaSelects sel, RandomSource& rng);

struct CrossoverResult {
    Chromosome child;
    std::vector<DrawTally> tallies; // one per task
};

/// Produces a single offspring from a parent pair. Within a linked group one
/// target length is drawn from the group's lowest-indexed task and reused for
/// every member; ungrouped tasks draw independently.
CrossoverResult crossover_chromosome(const Chromosome& p1, const Chromosome& p2,
                                     const std::vector<TaskSpec>& specs,
                                     const CrossoverParams& params, const LinkedGroups& groups,
                                     RandomSource& rng);

} // namespace mmxblx::crossover
