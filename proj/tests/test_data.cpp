#include <doctest.h>

#include <filesystem>

#include "mmxblx/data.hpp"
#include "mmxblx/report.hpp"
#include "test_helpers.hpp"

using namespace mmxblx;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("data");

namespace {

data::Trial flat_trial(const std::string& id, int index, double value) {
    data::Trial t;
    t.subject_id = id;
    t.trial_index = index;
    t.leads.assign(alcotask::kLeadCount, std::vector<double>(alcotask::kSampleCount, value));
    return t;
}

fs::path temp_dir() {
    const auto dir = fs::temp_directory_path() / "mmxblx_data_test";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("artifact rejection uses a strict threshold") {
    auto ok = flat_trial("s", 1, 50.0);
    auto boundary = flat_trial("s", 2, 1.0);
    boundary.leads[10][100] = 100.0; // exactly at the limit: kept
    auto bad = flat_trial("s", 3, 1.0);
    bad.leads[61][255] = 100.5; // exceeds: rejected
    auto bad_negative = flat_trial("s", 4, 1.0);
    bad_negative.leads[0][0] = -100.5;

    const auto kept = data::reject_artifacts({ok, boundary, bad, bad_negative});
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].trial_index == 1);
    CHECK(kept[1].trial_index == 2);
}

TEST_CASE("artifact rejection is idempotent") {
    std::vector<data::Trial> trials;
    RandomSource rng(1);
    for (int i = 0; i < 10; ++i) {
        auto t = flat_trial("s", i, 0.0);
        t.leads[3][7] = rng.uniform_real(80.0, 120.0);
        trials.push_back(std::move(t));
    }
    const auto once = data::reject_artifacts(trials);
    const auto twice = data::reject_artifacts(once);
    REQUIRE(once.size() == twice.size());
    for (std::size_t i = 0; i < once.size(); ++i)
        CHECK(once[i].trial_index == twice[i].trial_index);
}

TEST_CASE("build_subject excludes subjects with too few trials") {
    std::vector<data::Trial> trials;
    for (int i = 0; i < 39; ++i) trials.push_back(flat_trial("s", i, 1.0));
    RandomSource rng(2);
    CHECK_FALSE(data::build_subject(trials, data::Label::control, rng).has_value());
    trials.push_back(flat_trial("s", 39, 1.0));
    const auto built = data::build_subject(trials, data::Label::control, rng);
    REQUIRE(built.has_value());
    CHECK(built->first.label == data::Label::control);
    CHECK(built->first.leads.size() == alcotask::kLeadCount);
}

TEST_CASE("averaging identical trials returns the trial exactly") {
    RandomSource rng(3);
    data::Trial base = flat_trial("s", 0, 0.0);
    for (auto& row : base.leads)
        for (auto& v : row) v = rng.uniform_real(-90.0, 90.0);
    std::vector<data::Trial> trials;
    for (int i = 0; i < 41; ++i) {
        auto t = base;
        t.trial_index = i;
        trials.push_back(std::move(t));
    }
    const auto built = data::build_subject(trials, data::Label::alcoholic, rng);
    REQUIRE(built.has_value());
    CHECK(built->first.leads == base.leads); // train equals the common trial
    CHECK(built->second.leads == base.leads); // and so does test
}

TEST_CASE("synthetic generation") {
    data::SyntheticConfig cfg;
    cfg.n_alcoholic = 47;
    cfg.n_control = 31;
    cfg.planted_leads = {{5, 1.5}, {12, -2.0}, {30, 1.0}};
    cfg.pattern = {{4, 6.0}, {8, 10.0}, {12, 8.0}};
    cfg.insertion_position = 160;
    cfg.seed = 99;

    SUBCASE("cohort sizes match the configuration") {
        cfg.noise_sd = 1.0;
        const auto ds = data::generate_synthetic(cfg);
        std::size_t alc = 0, ctl = 0;
        for (const auto& s : ds.train) (s.label == data::Label::alcoholic ? alc : ctl) += 1;
        CHECK(alc == 47);
        CHECK(ctl == 31);
        CHECK(ds.test.size() == 78);
    }
    SUBCASE("same seed gives identical datasets") {
        cfg.noise_sd = 0.8;
        const auto a = data::generate_synthetic(cfg);
        const auto b = data::generate_synthetic(cfg);
        REQUIRE(a.train.size() == b.train.size());
        for (std::size_t i = 0; i < a.train.size(); ++i)
            CHECK(a.train[i].leads == b.train[i].leads);
        for (std::size_t i = 0; i < a.test.size(); ++i)
            CHECK(a.test[i].leads == b.test[i].leads);
    }
    SUBCASE("noiseless composite diffs equal the planted steps at the head") {
        cfg.noise_sd = 0.0;
        const auto ds = data::generate_synthetic(cfg);
        SubChromosome sensors;
        sensors.task_index = 0;
        for (const auto& [lead, w] : cfg.planted_leads) sensors.features.push_back({lead, {w}});
        const auto composite = alcotask::composite_signal(ds.train.front(), sensors);
        const int head = cfg.insertion_position + 12;
        for (const auto& [lag, step] : cfg.pattern) {
            const double diff = composite.at1(static_cast<std::size_t>(head)) -
                                composite.at1(static_cast<std::size_t>(head - lag));
            CHECK(diff == doctest::Approx(step).epsilon(1e-12));
        }
        // controls carry no plant
        const auto ctl = alcotask::composite_signal(ds.train.back(), sensors);
        for (const double v : ctl.samples) CHECK(v == 0.0);
    }
    SUBCASE("invalid configurations are rejected") {
        cfg.insertion_position = 250; // 250 + 12 > 256
        CHECK_THROWS_AS(data::generate_synthetic(cfg), std::invalid_argument);
        cfg.insertion_position = 160;
        cfg.planted_leads = {{63, 1.0}};
        CHECK_THROWS_AS(data::generate_synthetic(cfg), std::invalid_argument);
    }
}

TEST_CASE("subject files round-trip at full precision") {
    RandomSource rng(4);
    alcotask::SubjectRecord record;
    record.subject_id = "roundtrip";
    record.label = data::Label::alcoholic;
    record.leads.assign(alcotask::kLeadCount,
                        std::vector<double>(alcotask::kSampleCount, 0.0));
    for (auto& row : record.leads)
        for (auto& v : row) v = rng.uniform_real(-100.0, 100.0);

    const auto path = (temp_dir() / "subject.txt").string();
    data::save_subject(path, record);
    const auto loaded = data::load_subject(path);
    CHECK(loaded.subject_id == record.subject_id);
    CHECK(loaded.label == record.label);
    CHECK(loaded.leads == record.leads);
}

TEST_CASE("trial files round-trip") {
    auto trial = flat_trial("t7", 3, 0.25);
    trial.leads[5][5] = -99.875;
    const auto path = (temp_dir() / "trial.txt").string();
    data::save_trial(path, trial);
    const auto loaded = data::load_trial(path);
    CHECK(loaded.subject_id == "t7");
    CHECK(loaded.trial_index == 3);
    CHECK(loaded.leads == trial.leads);
}

TEST_CASE("malformed subject files are reported with context") {
    const auto dir = temp_dir();
    SUBCASE("wrong shape names the offending line") {
        const auto path = (dir / "short.txt").string();
        std::string text = "subject s1 control\n";
        for (int i = 0; i < 61; ++i) {
            for (int j = 0; j < 256; ++j) text += j ? " 0" : "0";
            text += "\n";
        }
        report::write_file(path, text);
        CHECK_THROWS_WITH_AS(data::load_subject(path),
                             doctest::Contains("expected 62 lead rows"), std::runtime_error);
    }
    SUBCASE("bad label is rejected") {
        const auto path = (dir / "badlabel.txt").string();
        report::write_file(path, "subject s1 patient\n");
        CHECK_THROWS_WITH_AS(data::load_subject(path), doctest::Contains("unknown label"),
                             std::runtime_error);
    }
    SUBCASE("unparsable numbers carry a line number") {
        const auto path = (dir / "badnum.txt").string();
        std::string text = "subject s1 control\n";
        for (int j = 0; j < 256; ++j) text += j ? " 0" : "0";
        text[text.size() - 1] = 'x';
        text += "\n";
        report::write_file(path, text);
        CHECK_THROWS_WITH_AS(data::load_subject(path), doctest::Contains(":2:"),
                             std::runtime_error);
    }
    SUBCASE("wrong sample count is rejected") {
        const auto path = (dir / "badwidth.txt").string();
        std::string text = "subject s1 control\n0 1 2\n";
        report::write_file(path, text);
        CHECK_THROWS_WITH_AS(data::load_subject(path), doctest::Contains("expected 256 samples"),
                             std::runtime_error);
    }
}

TEST_CASE("dataset manifests resolve relative paths") {
    const auto dir = temp_dir() / "ds";
    fs::create_directories(dir);
    std::vector<alcotask::SubjectRecord> records;
    for (int i = 0; i < 3; ++i) {
        alcotask::SubjectRecord r;
        r.subject_id = "s" + std::to_string(i);
        r.label = i < 2 ? data::Label::alcoholic : data::Label::control;
        r.leads.assign(alcotask::kLeadCount,
                       std::vector<double>(alcotask::kSampleCount, static_cast<double>(i)));
        records.push_back(std::move(r));
    }
    const auto manifest = (dir / "manifest.txt").string();
    data::save_dataset(manifest, (dir / "subjects").string(), records);
    const auto loaded = data::load_dataset(manifest);
    REQUIRE(loaded.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(loaded[i].subject_id == records[i].subject_id);
        CHECK(loaded[i].leads == records[i].leads);
    }
}

TEST_SUITE_END();
