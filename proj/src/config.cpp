#include "mmxblx/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mmxblx::config {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void missing(const std::string& section, const std::string& key) {
    throw std::runtime_error("missing config key: " + section + "." + key);
}

[[noreturn]] void bad_value(const std::string& section, const std::string& key,
                            const std::string& value) {
    throw std::runtime_error("config key " + section + "." + key + ": cannot parse '" + value +
                             "'");
}

} // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream buffer;
    buffer << is.rdbuf();
    return parse_string(buffer.str(), path);
}

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& origin) {
    ConfigFile cfg;
    cfg.origin_ = origin;
    std::istringstream is(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                std::ostringstream os;
                os << origin << ":" << lineno << ": malformed section header";
                throw std::runtime_error(os.str());
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << origin << ":" << lineno << ": expected 'key = value'";
            throw std::runtime_error(os.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            std::ostringstream os;
            os << origin << ":" << lineno << ": empty key";
            throw std::runtime_error(os.str());
        }
        cfg.values_[section + "." + key] = value;
    }
    return cfg;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    return values_.count(section + "." + key) > 0;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key) const {
    const auto it = values_.find(section + "." + key);
    if (it == values_.end()) missing(section, key);
    return it->second;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key) const {
    const std::string v = get_string(section, key);
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) bad_value(section, key, v);
    return out;
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

std::int64_t ConfigFile::get_int(const std::string& section, const std::string& key) const {
    const std::string v = get_string(section, key);
    std::int64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) bad_value(section, key, v);
    return out;
}

std::int64_t ConfigFile::get_int(const std::string& section, const std::string& key,
                                 std::int64_t fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

std::uint64_t ConfigFile::get_u64(const std::string& section, const std::string& key) const {
    const std::string v = get_string(section, key);
    std::uint64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) bad_value(section, key, v);
    return out;
}

std::uint64_t ConfigFile::get_u64(const std::string& section, const std::string& key,
                                  std::uint64_t fallback) const {
    return has(section, key) ? get_u64(section, key) : fallback;
}

void ConfigFile::set(const std::string& section, const std::string& key,
                     const std::string& value) {
    values_[section + "." + key] = value;
}

std::vector<std::pair<int, double>> parse_pair_list(const std::string& text,
                                                    const std::string& what) {
    std::vector<std::pair<int, double>> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error(what + ": expected 'id:value' items, got '" + item + "'");
        try {
            out.emplace_back(std::stoi(trim(item.substr(0, colon))),
                             std::stod(trim(item.substr(colon + 1))));
        } catch (const std::exception&) {
            throw std::runtime_error(what + ": cannot parse item '" + item + "'");
        }
    }
    if (out.empty()) throw std::runtime_error(what + ": empty list");
    return out;
}

RunConfig load_run_config(const ConfigFile& file, const CliOverrides& overrides) {
    RunConfig rc;
    rc.ga.population_size = static_cast<std::size_t>(file.get_int("ga", "population_size", 50));
    rc.ga.generations = static_cast<std::size_t>(file.get_int("ga", "generations", 5000));
    if (overrides.seed)
        rc.ga.seed = *overrides.seed;
    else
        rc.ga.seed = file.get_u64("ga", "seed");
    if (overrides.threads)
        rc.ga.threads = *overrides.threads;
    else
        rc.ga.threads = static_cast<unsigned>(file.get_int("ga", "threads", 1));
    if (rc.ga.population_size < 2 || rc.ga.population_size % 2 != 0)
        throw std::runtime_error("config key ga.population_size: must be even and >= 2");
    if (rc.ga.generations < 1)
        throw std::runtime_error("config key ga.generations: must be >= 1");

    const std::string mode = file.get_string("crossover", "mode");
    if (mode == "exploit")
        rc.ga.crossover.mode = CrossoverMode::exploit;
    else if (mode == "explore")
        rc.ga.crossover.mode = CrossoverMode::explore;
    else
        throw std::runtime_error("config key crossover.mode: expected exploit or explore");
    rc.ga.crossover.alpha = file.get_double("crossover", "alpha", 1.0);
    rc.ga.crossover.beta = file.get_double("crossover", "beta", 1.4);
    rc.ga.crossover.delta = file.get_double("crossover", "delta", 0.85);
    rc.ga.crossover.gamma = file.get_double("crossover", "gamma", 0.75);
    const std::string sel = file.get_string("crossover", "delta_selects", "first_bag");
    if (sel == "first_bag")
        rc.ga.crossover.delta_selects = DeltaSelects::first_bag;
    else if (sel == "absent_bag")
        rc.ga.crossover.delta_selects = DeltaSelects::absent_bag;
    else
        throw std::runtime_error(
            "config key crossover.delta_selects: expected first_bag or absent_bag");
    if (rc.ga.crossover.alpha < 0 || rc.ga.crossover.beta < 0 || rc.ga.crossover.gamma < 0 ||
        rc.ga.crossover.delta < 0 || rc.ga.crossover.delta > 1)
        throw std::runtime_error(
            "config: crossover parameters must satisfy alpha,beta,gamma >= 0 and 0 <= delta <= 1");

    rc.train_manifest = file.get_string("data", "train_manifest", "");
    rc.test_manifest = file.get_string("data", "test_manifest", "");
    rc.out_dir = overrides.out_dir ? *overrides.out_dir : file.get_string("output", "dir", "out");

    rc.sensor_subset_max =
        static_cast<std::size_t>(file.get_int("encoding", "sensor_subset_max", 5));
    rc.tpd_slots_max = static_cast<std::size_t>(file.get_int("encoding", "tpd_slots_max", 2));
    if (file.has("encoding", "teacher_count"))
        rc.teacher_count = static_cast<int>(file.get_int("encoding", "teacher_count"));

    return rc;
}

data::SyntheticConfig load_synth_config(const ConfigFile& file, const CliOverrides& overrides) {
    data::SyntheticConfig sc;
    sc.n_alcoholic = static_cast<std::size_t>(file.get_int("synth", "n_alcoholic", 47));
    sc.n_control = static_cast<std::size_t>(file.get_int("synth", "n_control", 31));
    sc.noise_sd = file.get_double("synth", "noise_sd", 0.3);
    sc.insertion_position = static_cast<int>(file.get_int("synth", "insertion_position", 160));
    sc.planted_leads = parse_pair_list(
        file.get_string("synth", "planted_leads", "5:1.5, 12:-2.0, 30:1.0"), "synth.planted_leads");
    sc.pattern = parse_pair_list(
        file.get_string("synth", "pattern", "4:24, 5:24, 8:40, 9:40, 12:32, 13:32"),
        "synth.pattern");
    if (overrides.seed)
        sc.seed = *overrides.seed;
    else
        sc.seed = file.get_u64("synth", "seed");
    return sc;
}

} // namespace mmxblx::config
