#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mmxblx/data.hpp"
#include "mmxblx/evolution.hpp"

namespace mmxblx::config {

/// Flat "key = value" file with [section] headers; '#' starts a comment.
/// Lookups that have no default throw, naming the missing section.key.
class ConfigFile {
public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& section, const std::string& key) const;
    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::int64_t fallback) const;
    std::uint64_t get_u64(const std::string& section, const std::string& key) const;
    std::uint64_t get_u64(const std::string& section, const std::string& key,
                          std::uint64_t fallback) const;

    void set(const std::string& section, const std::string& key, const std::string& value);

private:
    std::map<std::string, std::string> values_; // "section.key" -> value
    std::string origin_;
};

/// Everything one batch run needs; bounds are re-validated on load.
struct RunConfig {
    evolution::GaConfig ga;
    std::string train_manifest;
    std::string test_manifest;
    std::string out_dir = "out";
    std::size_t sensor_subset_max = 5;
    std::size_t tpd_slots_max = 2;
    std::optional<int> teacher_count; // default: alcoholic count of the train set
    data::SyntheticConfig synth;
};

struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<unsigned> threads;
};

/// Loads the [ga]/[crossover]/[encoding]/[data]/[output] sections. mode and
/// seed must be present (seed may come from the --seed override).
RunConfig load_run_config(const ConfigFile& file, const CliOverrides& overrides);

/// Loads the [synth] section; seed must be present (or overridden).
data::SyntheticConfig load_synth_config(const ConfigFile& file, const CliOverrides& overrides);

/// Parses "5:1.5, 12:-2.0" style id:value pair lists.
std::vector<std::pair<int, double>> parse_pair_list(const std::string& text,
                                                    const std::string& what);

} // namespace mmxblx::config
