#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmxblx/rng.hpp"

namespace mmxblx {

enum class AttrKind { integer, real };

/// Per-element bounds and datatypes of a task's attribute vector.
struct AttributeSchema {
    std::vector<double> max_values;
    std::vector<double> min_values;
    std::vector<AttrKind> datatypes;

    std::size_t length() const { return datatypes.size(); }
};

/// Bounds of one subset-selection task: feature-id range, subset-size range,
/// and the attribute schema shared by all of its features.
struct TaskSpec {
    int feature_min = 0;
    int feature_max = 0;
    std::size_t subset_min = 0;
    std::size_t subset_max = 0;
    AttributeSchema schema;

    std::size_t universe_size() const {
        return static_cast<std::size_t>(feature_max - feature_min + 1);
    }
};

enum class CrossoverMode { exploit, explore };

/// Orientation of the delta parameter in two-bag choices. first_bag: delta is
/// the probability of the first-listed bag (unique in the exploit procedure,
/// common/unique in the explore procedure). absent_bag: delta is the
/// probability of the absent bag, so delta = 0 maintains negative respect.
enum class DeltaSelects { first_bag, absent_bag };

struct CrossoverParams {
    double alpha = 1.0;  // sub-chromosome length range extension
    double beta = 1.4;   // common-attribute blend extension
    double delta = 0.85; // two-bag choice probability
    double gamma = 0.75; // unique-attribute perturbation fraction
    CrossoverMode mode = CrossoverMode::exploit;
    DeltaSelects delta_selects = DeltaSelects::first_bag;
};

/// One selected feature: an integer id plus its attribute vector. Integer-kind
/// attribute elements hold exact integral values.
struct Feature {
    int id = 0;
    std::vector<double> attributes;
};

struct SubChromosome {
    std::size_t task_index = 0;
    std::vector<Feature> features;

    std::size_t size() const { return features.size(); }
    bool contains(int id) const {
        for (const auto& f : features)
            if (f.id == id) return true;
        return false;
    }
};

/// N variable-length sub-chromosomes, one per task, plus a cached penalty.
struct Chromosome {
    std::vector<SubChromosome> subs;
    std::optional<double> penalty;
};

/// Linked-length groups: sub-chromosomes within one group must share a length.
using LinkedGroups = std::vector<std::vector<std::size_t>>;

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    std::string str() const;
};

/// Checks a schema's internal consistency (equal list lengths, max >= min,
/// integral bounds on integer-kind elements).
ValidationReport validate_schema(const AttributeSchema& schema);

/// Checks the task bound chain (universe > subset_max >= subset_min > 0) and
/// the schema.
ValidationReport validate_task_spec(const TaskSpec& spec);

/// Checks every chromosome invariant against the task specs: bound
/// violations, duplicate ids, size-range violations, unequal linked lengths.
ValidationReport validate_chromosome(const Chromosome& c, const std::vector<TaskSpec>& specs,
                                     const LinkedGroups& groups);

} // namespace mmxblx
