#pragma once

#include <string>
#include <vector>

#include "mmxblx/core.hpp"
#include "mmxblx/tpd.hpp"

namespace mmxblx::alcotask {

inline constexpr std::size_t kLeadCount = 62;
inline constexpr std::size_t kSampleCount = 256;

enum class Label { alcoholic, control };

/// One subject's averaged evoked response: 62 lead signals of 256 samples
/// each (microvolts), plus the class label.
struct SubjectRecord {
    std::string subject_id;
    Label label = Label::control;
    std::vector<std::vector<double>> leads; // kLeadCount rows x kSampleCount columns
};

/// The four-task chromosome encoding for the classification problem:
///   task 0  sensor ids 1-62, one real weight in [-4, 4], subset 1-5
///   task 1  teacher ids 1-teacher_count, no attributes, subset 1-2
///   task 2  reference pointers 97-250, integer skip-length in [1, 12], subset 1-2
///   task 3  qualification ids 1-255, cutoff [0.1, 20], order [1, 15],
///           amplitude [0, 1], subset 1-2
/// Tasks 1-3 form a linked-length group (one TPD per slot).
struct Encoding {
    std::vector<TaskSpec> tasks;
    LinkedGroups groups;
    int teacher_count = 47;
};

Encoding make_encoding(int teacher_count = 47, std::size_t sensor_subset_max = 5,
                       std::size_t tpd_slots_max = 2);

/// Weighted sum of the selected leads: one 256-sample signal.
tpd::Signal composite_signal(const SubjectRecord& subject, const SubChromosome& sensors);

/// Expands a qualification id into the set of lag multipliers: bit j of q
/// (bit 1 = least significant) qualifies multiplier j, j in 1..8.
std::vector<int> decode_qualification(int q);

/// Builds a detector whose supports are read off the teacher signal at the
/// positions rp - phi*skip for each qualified multiplier phi.
tpd::ToleranceSpec build_tpd(const tpd::Signal& teacher, int rp, int skip,
                             const std::vector<int>& phis, double cutoff, int order,
                             double amplitude);

/// Area under the ROC curve of two score samples, Mann-Whitney form with ties
/// credited 0.5. Computed via midranks; equals exhaustive pairwise counting.
double auc(const std::vector<double>& pos, const std::vector<double>& neg);

/// Penalty of a chromosome on a training set: builds one TPD per linked-group
/// slot from the encoded teacher/pointer/qualification triple, sums the
/// detectors' scan scores per subject, and returns 1 - AUC of the
/// alcoholic-vs-control score distributions.
double evaluate(const Chromosome& chrom, const std::vector<SubjectRecord>& train,
                const std::vector<const SubjectRecord*>& teachers, const Encoding& enc);

/// The alcoholic records of a training set, in manifest order; teacher id k
/// refers to the k-th entry (1-based).
std::vector<const SubjectRecord*> collect_teachers(const std::vector<SubjectRecord>& train);

} // namespace mmxblx::alcotask
