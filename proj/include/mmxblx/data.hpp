#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmxblx/alcotask.hpp"
#include "mmxblx/rng.hpp"

namespace mmxblx::data {

using alcotask::Label;
using alcotask::SubjectRecord;

/// One raw stimulus-locked recording: 62 leads x 256 samples (microvolts).
struct Trial {
    std::string subject_id;
    int trial_index = 0;
    std::vector<std::vector<double>> leads;
};

/// Desk-scale synthetic cohort: control subjects are pure Gaussian noise;
/// alcoholic subjects carry the same noise plus a fixed amplitude-step
/// pattern on the planted leads. The pattern's lagged positions sit at
/// insertion_position + max_lag - lag, so the matching detector head is at
/// insertion_position + max_lag. Each planted lead receives the pattern
/// scaled by weight / sum(weights^2): the composite built with the planted
/// weights then reproduces the steps exactly.
struct SyntheticConfig {
    std::size_t n_alcoholic = 47;
    std::size_t n_control = 31;
    std::vector<std::pair<int, double>> planted_leads;  // (lead id, weight)
    std::vector<std::pair<int, double>> pattern;        // (lag, amplitude step)
    double noise_sd = 0.3;
    int insertion_position = 160;
    std::uint64_t seed = 0;
};

/// Keeps only trials whose every sample satisfies |v| <= 100 microvolts; a
/// trial is discarded only when some lead strictly exceeds the threshold.
std::vector<Trial> reject_artifacts(const std::vector<Trial>& trials);

/// Averages two independent draws of n_average trials into a train and a test
/// record (overlap between the draws is allowed). Subjects with fewer than
/// min_trials usable trials are excluded (returns nullopt).
std::optional<std::pair<SubjectRecord, SubjectRecord>> build_subject(
    const std::vector<Trial>& trials, Label label, RandomSource& rng, std::size_t n_average = 36,
    std::size_t min_trials = 40);

struct Dataset {
    std::vector<SubjectRecord> train;
    std::vector<SubjectRecord> test;
};

/// Fully seed-deterministic synthetic train/test cohorts: independent noise,
/// identical plants.
Dataset generate_synthetic(const SyntheticConfig& cfg);

/// Subject file: line 1 "subject <id> <label>", then 62 rows of 256
/// space-separated reals. Values round-trip at full precision.
void save_subject(const std::string& path, const SubjectRecord& record);
SubjectRecord load_subject(const std::string& path);

/// Trial file: header "trial <subject_id> <trial_index>", same matrix body.
void save_trial(const std::string& path, const Trial& trial);
Trial load_trial(const std::string& path);

/// Manifest: one subject-file path per line, resolved relative to the
/// manifest's directory.
std::vector<SubjectRecord> load_dataset(const std::string& manifest_path);
void save_dataset(const std::string& manifest_path, const std::string& subject_dir,
                  const std::vector<SubjectRecord>& records);

} // namespace mmxblx::data
