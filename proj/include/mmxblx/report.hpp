#pragma once

#include <string>
#include <vector>

#include "mmxblx/core.hpp"
#include "mmxblx/evolution.hpp"

namespace mmxblx::report {

/// Shortest round-trip decimal form of a double; byte-stable across runs.
std::string format_double(double v);

/// history.csv: generation, best_penalty, mean_penalty, draws_common,
/// draws_unique, draws_absent (tallies summed over tasks).
std::string history_csv(const std::vector<evolution::GenerationStats>& history);

/// sensors.csv: per-generation occupancy count of every task-0 feature id in
/// [id_min, id_max].
std::string sensors_csv(const std::vector<evolution::GenerationStats>& history, int id_min,
                        int id_max);

/// Decoded best-chromosome report (parseable by parse_best_report):
///   training_penalty <p>
///   sensors <n> / sensor <id> weight <w> ...
///   slots <n> / slot <k> teacher <id> rp <id> skip <s> qualification <q>
///                         cutoff <c> order <o> amplitude <a> ...
std::string best_report(const Chromosome& best);

/// Rebuilds the chromosome (penalty included) from a best report.
Chromosome parse_best_report(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace mmxblx::report
