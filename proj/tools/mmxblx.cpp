// Batch front end: synthesize datasets, preprocess trial files, run the
// evolutionary search, and evaluate saved chromosomes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "mmxblx/alcotask.hpp"
#include "mmxblx/config.hpp"
#include "mmxblx/data.hpp"
#include "mmxblx/evolution.hpp"
#include "mmxblx/report.hpp"

namespace fs = std::filesystem;
using namespace mmxblx;

namespace {

struct CommonArgs {
    std::string config_path;
    config::CliOverrides overrides;
};

config::ConfigFile load_config(const CommonArgs& args) {
    if (args.config_path.empty()) return config::ConfigFile::parse_string("");
    return config::ConfigFile::parse_file(args.config_path);
}

alcotask::Encoding resolve_encoding(const config::RunConfig& rc,
                                    const std::vector<data::SubjectRecord>& train) {
    const int teachers = rc.teacher_count
                             ? *rc.teacher_count
                             : static_cast<int>(alcotask::collect_teachers(train).size());
    return alcotask::make_encoding(teachers, rc.sensor_subset_max, rc.tpd_slots_max);
}

int cmd_synth(const CommonArgs& args) {
    const auto file = load_config(args);
    const auto sc = config::load_synth_config(file, args.overrides);
    const std::string out_dir = args.overrides.out_dir
                                    ? *args.overrides.out_dir
                                    : file.get_string("output", "dir", "out");
    const data::Dataset ds = data::generate_synthetic(sc);
    fs::create_directories(out_dir);
    data::save_dataset((fs::path(out_dir) / "train_manifest.txt").string(),
                       (fs::path(out_dir) / "train").string(), ds.train);
    data::save_dataset((fs::path(out_dir) / "test_manifest.txt").string(),
                       (fs::path(out_dir) / "test").string(), ds.test);
    std::cout << "wrote " << ds.train.size() << " train and " << ds.test.size()
              << " test subjects under " << out_dir << "\n";
    return 0;
}

int cmd_preprocess(const CommonArgs& args) {
    const auto file = load_config(args);
    const std::string trials_manifest = file.get_string("preprocess", "trials_manifest");
    const std::string labels_path = file.get_string("preprocess", "labels");
    const auto n_average =
        static_cast<std::size_t>(file.get_int("preprocess", "n_average", 36));
    const auto min_trials =
        static_cast<std::size_t>(file.get_int("preprocess", "min_trials", 40));
    const std::uint64_t seed = args.overrides.seed ? *args.overrides.seed
                                                   : file.get_u64("preprocess", "seed");
    const std::string out_dir = args.overrides.out_dir
                                    ? *args.overrides.out_dir
                                    : file.get_string("output", "dir", "out");

    std::map<std::string, data::Label> labels;
    {
        std::ifstream is(labels_path);
        if (!is) throw std::runtime_error("cannot open " + labels_path);
        std::string id, label;
        while (is >> id >> label) {
            if (label == "alcoholic")
                labels[id] = data::Label::alcoholic;
            else if (label == "control")
                labels[id] = data::Label::control;
            else
                throw std::runtime_error(labels_path + ": unknown label '" + label + "'");
        }
    }

    // group trials by subject, in manifest order of first appearance
    std::vector<std::string> subject_order;
    std::map<std::string, std::vector<data::Trial>> by_subject;
    {
        std::ifstream is(trials_manifest);
        if (!is) throw std::runtime_error("cannot open " + trials_manifest);
        const fs::path base = fs::path(trials_manifest).parent_path();
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            fs::path p(line);
            if (p.is_relative()) p = base / p;
            data::Trial t = data::load_trial(p.string());
            if (by_subject.find(t.subject_id) == by_subject.end())
                subject_order.push_back(t.subject_id);
            by_subject[t.subject_id].push_back(std::move(t));
        }
    }

    RandomSource rng(seed);
    std::vector<data::SubjectRecord> train, test;
    for (const auto& id : subject_order) {
        const auto lit = labels.find(id);
        if (lit == labels.end())
            throw std::runtime_error("no label for subject " + id + " in " + labels_path);
        const auto usable = data::reject_artifacts(by_subject[id]);
        auto built = data::build_subject(usable, lit->second, rng, n_average, min_trials);
        if (!built) {
            std::cout << "excluded " << id << " (" << usable.size() << " usable trials)\n";
            continue;
        }
        train.push_back(std::move(built->first));
        test.push_back(std::move(built->second));
    }
    if (train.empty()) throw std::runtime_error("no subject had enough usable trials");
    fs::create_directories(out_dir);
    data::save_dataset((fs::path(out_dir) / "train_manifest.txt").string(),
                       (fs::path(out_dir) / "train").string(), train);
    data::save_dataset((fs::path(out_dir) / "test_manifest.txt").string(),
                       (fs::path(out_dir) / "test").string(), test);
    std::cout << "wrote " << train.size() << " subjects under " << out_dir << "\n";
    return 0;
}

int cmd_evolve(const CommonArgs& args) {
    const auto file = load_config(args);
    const auto rc = config::load_run_config(file, args.overrides);
    if (rc.train_manifest.empty())
        throw std::runtime_error("missing config key: data.train_manifest");
    const auto train = data::load_dataset(rc.train_manifest);
    const auto enc = resolve_encoding(rc, train);
    const auto teachers = alcotask::collect_teachers(train);

    const evolution::FitnessFn fitness = [&](const Chromosome& c) {
        return alcotask::evaluate(c, train, teachers, enc);
    };

    const std::size_t stride = std::max<std::size_t>(1, rc.ga.generations / 10);
    const auto progress = [&](const evolution::GenerationStats& stats) {
        if (stats.generation % stride == 0 || stats.generation == rc.ga.generations)
            std::cerr << "generation " << stats.generation << "/" << rc.ga.generations
                      << " best " << report::format_double(stats.best_penalty) << "\n";
    };
    const auto result = evolution::run(rc.ga, fitness, enc.tasks, enc.groups, progress);

    fs::create_directories(rc.out_dir);
    report::write_file((fs::path(rc.out_dir) / "history.csv").string(),
                       report::history_csv(result.history));
    report::write_file((fs::path(rc.out_dir) / "sensors.csv").string(),
                       report::sensors_csv(result.history, enc.tasks[0].feature_min,
                                           enc.tasks[0].feature_max));
    const Chromosome* best = &result.population.front();
    for (const auto& c : result.population)
        if (*c.penalty < *best->penalty) best = &c;
    report::write_file((fs::path(rc.out_dir) / "best.txt").string(), report::best_report(*best));
    std::cout << "best training penalty " << report::format_double(*best->penalty) << " after "
              << rc.ga.generations << " generations; outputs in " << rc.out_dir << "\n";
    return 0;
}

int cmd_evaluate(const CommonArgs& args, const std::string& best_path, const std::string& on_set) {
    const auto file = load_config(args);
    config::CliOverrides ov = args.overrides;
    if (!ov.seed) ov.seed = 0; // evaluation draws nothing; seed is irrelevant
    const auto rc = config::load_run_config(file, ov);
    if (rc.train_manifest.empty())
        throw std::runtime_error("missing config key: data.train_manifest");
    const auto train = data::load_dataset(rc.train_manifest);
    const auto enc = resolve_encoding(rc, train);
    const auto teachers = alcotask::collect_teachers(train);

    const std::string path =
        best_path.empty() ? (fs::path(rc.out_dir) / "best.txt").string() : best_path;
    const Chromosome chrom = report::parse_best_report(report::read_file(path));

    double penalty = 0.0;
    if (on_set == "train") {
        penalty = alcotask::evaluate(chrom, train, teachers, enc);
    } else if (on_set == "test") {
        if (rc.test_manifest.empty())
            throw std::runtime_error("missing config key: data.test_manifest");
        const auto test = data::load_dataset(rc.test_manifest);
        penalty = alcotask::evaluate(chrom, test, teachers, enc);
    } else {
        throw std::runtime_error("evaluate: --set must be train or test");
    }
    std::cout << on_set << "_penalty " << report::format_double(penalty) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MMX-BLX multi-subset-selection GA with temporal pattern detector fitness"};
    app.require_subcommand(1);

    CommonArgs args;
    std::uint64_t seed_flag = 0;
    std::string out_flag;
    unsigned threads_flag = 0;
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", args.config_path, "configuration file path");
        cmd->add_option("--seed", seed_flag, "seed override");
        cmd->add_option("--out", out_flag, "output directory override");
        cmd->add_option("--threads", threads_flag, "fitness evaluation threads");
    };
    const auto collect_overrides = [&](CLI::App* cmd) {
        if (cmd->count("--seed")) args.overrides.seed = seed_flag;
        if (cmd->count("--out")) args.overrides.out_dir = out_flag;
        if (cmd->count("--threads")) args.overrides.threads = threads_flag;
    };

    auto* synth = app.add_subcommand("synth", "generate a synthetic train/test dataset");
    add_common(synth);
    auto* preprocess =
        app.add_subcommand("preprocess", "average trial files into subject records");
    add_common(preprocess);
    auto* evolve = app.add_subcommand("evolve", "run the evolutionary search");
    add_common(evolve);
    auto* evaluate = app.add_subcommand("evaluate", "score a saved chromosome on a dataset");
    add_common(evaluate);
    std::string best_path;
    std::string on_set = "test";
    evaluate->add_option("--best", best_path, "best-report file (default <out>/best.txt)");
    evaluate->add_option("--set", on_set, "dataset to score: train or test");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) {
            collect_overrides(synth);
            return cmd_synth(args);
        }
        if (preprocess->parsed()) {
            collect_overrides(preprocess);
            return cmd_preprocess(args);
        }
        if (evolve->parsed()) {
            collect_overrides(evolve);
            return cmd_evolve(args);
        }
        if (evaluate->parsed()) {
            collect_overrides(evaluate);
            return cmd_evaluate(args, best_path, on_set);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
