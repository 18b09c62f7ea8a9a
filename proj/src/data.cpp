#include "mmxblx/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mmxblx::data {

namespace fs = std::filesystem;

namespace {

constexpr double kArtifactThresholdMicrovolts = 100.0;

std::string label_token(Label l) { return l == Label::alcoholic ? "alcoholic" : "control"; }

Label parse_label(const std::string& tok, const std::string& path) {
    if (tok == "alcoholic") return Label::alcoholic;
    if (tok == "control") return Label::control;
    throw std::runtime_error(path + ":1: unknown label '" + tok +
                             "' (expected alcoholic or control)");
}

std::string format_full(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_matrix(std::ostream& os, const std::vector<std::vector<double>>& leads) {
    for (const auto& row : leads) {
        for (std::size_t t = 0; t < row.size(); ++t) {
            if (t) os << ' ';
            os << format_full(row[t]);
        }
        os << '\n';
    }
}

std::vector<std::vector<double>> read_matrix(std::istream& is, const std::string& path,
                                             std::size_t first_line) {
    std::vector<std::vector<double>> leads;
    std::string line;
    for (std::size_t r = 0; r < alcotask::kLeadCount; ++r) {
        const std::size_t lineno = first_line + r;
        if (!std::getline(is, line)) {
            std::ostringstream os;
            os << path << ":" << lineno << ": expected " << alcotask::kLeadCount
               << " lead rows, found " << r;
            throw std::runtime_error(os.str());
        }
        std::vector<double> row;
        row.reserve(alcotask::kSampleCount);
        const char* p = line.data();
        const char* end = line.data() + line.size();
        while (p < end) {
            while (p < end && *p == ' ') ++p;
            if (p == end) break;
            double v = 0.0;
            const auto res = std::from_chars(p, end, v);
            if (res.ec != std::errc{}) {
                std::ostringstream os;
                os << path << ":" << lineno << ": unparsable number at column "
                   << (p - line.data() + 1);
                throw std::runtime_error(os.str());
            }
            row.push_back(v);
            p = res.ptr;
        }
        if (row.size() != alcotask::kSampleCount) {
            std::ostringstream os;
            os << path << ":" << lineno << ": expected " << alcotask::kSampleCount
               << " samples, found " << row.size();
            throw std::runtime_error(os.str());
        }
        leads.push_back(std::move(row));
    }
    if (std::string extra; std::getline(is, extra) && !extra.empty()) {
        std::ostringstream os;
        os << path << ":" << (first_line + alcotask::kLeadCount)
           << ": trailing content after lead rows";
        throw std::runtime_error(os.str());
    }
    return leads;
}

// mean = first + sum(x - first)/k, which is exact when all inputs are equal
std::vector<std::vector<double>> average_trials(const std::vector<const Trial*>& trials) {
    const auto k = static_cast<double>(trials.size());
    const auto& first = trials.front()->leads;
    std::vector<std::vector<double>> mean = first;
    for (std::size_t r = 0; r < mean.size(); ++r) {
        for (std::size_t t = 0; t < mean[r].size(); ++t) {
            double delta_sum = 0.0;
            for (const Trial* trial : trials) delta_sum += trial->leads[r][t] - first[r][t];
            mean[r][t] = first[r][t] + delta_sum / k;
        }
    }
    return mean;
}

} // namespace

std::vector<Trial> reject_artifacts(const std::vector<Trial>& trials) {
    std::vector<Trial> kept;
    for (const auto& trial : trials) {
        bool clean = true;
        for (const auto& row : trial.leads) {
            for (const double v : row) {
                if (std::abs(v) > kArtifactThresholdMicrovolts) {
                    clean = false;
                    break;
                }
            }
            if (!clean) break;
        }
        if (clean) kept.push_back(trial);
    }
    return kept;
}

std::optional<std::pair<SubjectRecord, SubjectRecord>> build_subject(
    const std::vector<Trial>& trials, Label label, RandomSource& rng, std::size_t n_average,
    std::size_t min_trials) {
    if (trials.size() < min_trials) return std::nullopt;

    const auto draw = [&]() {
        const auto idx = rng.sample_indices(trials.size(), n_average);
        std::vector<const Trial*> chosen;
        chosen.reserve(idx.size());
        for (const auto i : idx) chosen.push_back(&trials[i]);
        return average_trials(chosen);
    };

    SubjectRecord train;
    train.subject_id = trials.front().subject_id;
    train.label = label;
    train.leads = draw();
    SubjectRecord test = train;
    test.leads = draw();
    return std::make_pair(std::move(train), std::move(test));
}

Dataset generate_synthetic(const SyntheticConfig& cfg) {
    if (cfg.planted_leads.empty()) throw std::invalid_argument("synthetic: no planted leads");
    if (cfg.pattern.empty()) throw std::invalid_argument("synthetic: empty pattern");
    int max_lag = 0;
    for (const auto& [lag, step] : cfg.pattern) {
        if (lag < 1) throw std::invalid_argument("synthetic: pattern lags must be >= 1");
        max_lag = std::max(max_lag, lag);
    }
    if (cfg.insertion_position < 1 ||
        cfg.insertion_position + max_lag > static_cast<int>(alcotask::kSampleCount))
        throw std::invalid_argument("synthetic: insertion_position + max lag exceeds signal");
    double weight_norm = 0.0;
    for (const auto& [lead, w] : cfg.planted_leads) {
        if (lead < 1 || lead > static_cast<int>(alcotask::kLeadCount))
            throw std::invalid_argument("synthetic: planted lead id outside 1..62");
        weight_norm += w * w;
    }
    if (weight_norm == 0.0) throw std::invalid_argument("synthetic: planted weights all zero");

    const int head = cfg.insertion_position + max_lag;
    RandomSource rng(cfg.seed);

    const auto make_subject = [&](Label label, std::size_t index) {
        SubjectRecord s;
        std::ostringstream id;
        id << (label == Label::alcoholic ? "alc" : "ctl") << (index + 1);
        s.subject_id = id.str();
        s.label = label;
        s.leads.assign(alcotask::kLeadCount, std::vector<double>(alcotask::kSampleCount, 0.0));
        for (auto& row : s.leads)
            for (auto& v : row) v = rng.normal(0.0, cfg.noise_sd);
        if (label == Label::alcoholic) {
            for (const auto& [lead, w] : cfg.planted_leads) {
                const double scale = w / weight_norm;
                auto& row = s.leads[static_cast<std::size_t>(lead - 1)];
                for (const auto& [lag, step] : cfg.pattern)
                    row[static_cast<std::size_t>(head - lag - 1)] -= scale * step;
            }
        }
        return s;
    };

    Dataset out;
    for (std::size_t i = 0; i < cfg.n_alcoholic; ++i)
        out.train.push_back(make_subject(Label::alcoholic, i));
    for (std::size_t i = 0; i < cfg.n_control; ++i)
        out.train.push_back(make_subject(Label::control, i));
    for (std::size_t i = 0; i < cfg.n_alcoholic; ++i)
        out.test.push_back(make_subject(Label::alcoholic, i));
    for (std::size_t i = 0; i < cfg.n_control; ++i)
        out.test.push_back(make_subject(Label::control, i));
    return out;
}

void save_subject(const std::string& path, const SubjectRecord& record) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << "subject " << record.subject_id << ' ' << label_token(record.label) << '\n';
    write_matrix(os, record.leads);
    if (!os) throw std::runtime_error("write failed: " + path);
}

SubjectRecord load_subject(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error(path + ":1: empty file");
    std::istringstream header(line);
    std::string kind, id, label;
    header >> kind >> id >> label;
    if (kind != "subject" || id.empty() || label.empty())
        throw std::runtime_error(path + ":1: malformed header (expected 'subject <id> <label>')");
    SubjectRecord record;
    record.subject_id = id;
    record.label = parse_label(label, path);
    record.leads = read_matrix(is, path, 2);
    return record;
}

void save_trial(const std::string& path, const Trial& trial) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << "trial " << trial.subject_id << ' ' << trial.trial_index << '\n';
    write_matrix(os, trial.leads);
    if (!os) throw std::runtime_error("write failed: " + path);
}

Trial load_trial(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error(path + ":1: empty file");
    std::istringstream header(line);
    std::string kind, id;
    int index = 0;
    header >> kind >> id >> index;
    if (kind != "trial" || id.empty())
        throw std::runtime_error(path +
                                 ":1: malformed header (expected 'trial <subject_id> <index>')");
    Trial trial;
    trial.subject_id = id;
    trial.trial_index = index;
    trial.leads = read_matrix(is, path, 2);
    return trial;
}

std::vector<SubjectRecord> load_dataset(const std::string& manifest_path) {
    std::ifstream is(manifest_path);
    if (!is) throw std::runtime_error("cannot open " + manifest_path);
    const fs::path base = fs::path(manifest_path).parent_path();
    std::vector<SubjectRecord> records;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        fs::path p(line);
        if (p.is_relative()) p = base / p;
        records.push_back(load_subject(p.string()));
    }
    if (records.empty()) throw std::runtime_error(manifest_path + ": manifest lists no subjects");
    return records;
}

void save_dataset(const std::string& manifest_path, const std::string& subject_dir,
                  const std::vector<SubjectRecord>& records) {
    fs::create_directories(subject_dir);
    std::ofstream manifest(manifest_path);
    if (!manifest) throw std::runtime_error("cannot write " + manifest_path);
    const fs::path base = fs::path(manifest_path).parent_path();
    for (const auto& r : records) {
        const fs::path file = fs::path(subject_dir) / (r.subject_id + ".txt");
        save_subject(file.string(), r);
        manifest << fs::relative(file, base).string() << '\n';
    }
    if (!manifest) throw std::runtime_error("write failed: " + manifest_path);
}

} // namespace mmxblx::data
