#include "mmxblx/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mmxblx::report {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string history_csv(const std::vector<evolution::GenerationStats>& history) {
    std::ostringstream os;
    os << "generation,best_penalty,mean_penalty,draws_common,draws_unique,draws_absent\n";
    for (const auto& g : history) {
        crossover::DrawTally total;
        for (const auto& t : g.tallies) total += t;
        os << g.generation << ',' << format_double(g.best_penalty) << ','
           << format_double(g.mean_penalty) << ',' << total.from_common << ','
           << total.from_unique << ',' << total.from_absent << '\n';
    }
    return os.str();
}

std::string sensors_csv(const std::vector<evolution::GenerationStats>& history, int id_min,
                        int id_max) {
    std::ostringstream os;
    os << "generation";
    for (int id = id_min; id <= id_max; ++id) os << ",s" << id;
    os << '\n';
    for (const auto& g : history) {
        os << g.generation;
        for (int id = id_min; id <= id_max; ++id) {
            const auto it = g.sensor_histogram.find(id);
            os << ',' << (it == g.sensor_histogram.end() ? 0 : it->second);
        }
        os << '\n';
    }
    return os.str();
}

std::string best_report(const Chromosome& best) {
    if (!best.penalty) throw std::invalid_argument("best_report: penalty not evaluated");
    if (best.subs.size() != 4)
        throw std::invalid_argument("best_report: expected the 4-task encoding");
    std::ostringstream os;
    os << "training_penalty " << format_double(*best.penalty) << '\n';
    const auto& sensors = best.subs[0];
    os << "sensors " << sensors.size() << '\n';
    for (const auto& f : sensors.features)
        os << "sensor " << f.id << " weight " << format_double(f.attributes[0]) << '\n';
    const auto& teachers = best.subs[1];
    const auto& refpoints = best.subs[2];
    const auto& quals = best.subs[3];
    os << "slots " << teachers.size() << '\n';
    for (std::size_t k = 0; k < teachers.size(); ++k) {
        os << "slot " << (k + 1) << " teacher " << teachers.features[k].id << " rp "
           << refpoints.features[k].id << " skip "
           << static_cast<int>(refpoints.features[k].attributes[0]) << " qualification "
           << quals.features[k].id << " cutoff " << format_double(quals.features[k].attributes[0])
           << " order " << static_cast<int>(quals.features[k].attributes[1]) << " amplitude "
           << format_double(quals.features[k].attributes[2]) << '\n';
    }
    return os.str();
}

namespace {

[[noreturn]] void parse_error(std::size_t lineno, const std::string& what) {
    std::ostringstream os;
    os << "best report line " << lineno << ": " << what;
    throw std::runtime_error(os.str());
}

} // namespace

Chromosome parse_best_report(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    const auto next_line = [&](std::istringstream& out) {
        if (!std::getline(is, line)) parse_error(lineno + 1, "unexpected end of report");
        ++lineno;
        out.clear();
        out.str(line);
    };

    Chromosome chrom;
    chrom.subs.resize(4);
    for (std::size_t i = 0; i < 4; ++i) chrom.subs[i].task_index = i;

    std::istringstream ls;
    std::string tag;
    double penalty = 0.0;
    next_line(ls);
    if (!(ls >> tag >> penalty) || tag != "training_penalty")
        parse_error(lineno, "expected 'training_penalty <p>'");
    chrom.penalty = penalty;

    std::size_t n_sensors = 0;
    next_line(ls);
    if (!(ls >> tag >> n_sensors) || tag != "sensors") parse_error(lineno, "expected 'sensors <n>'");
    for (std::size_t i = 0; i < n_sensors; ++i) {
        next_line(ls);
        int id = 0;
        double weight = 0.0;
        std::string wtag;
        if (!(ls >> tag >> id >> wtag >> weight) || tag != "sensor" || wtag != "weight")
            parse_error(lineno, "expected 'sensor <id> weight <w>'");
        chrom.subs[0].features.push_back({id, {weight}});
    }

    std::size_t n_slots = 0;
    next_line(ls);
    if (!(ls >> tag >> n_slots) || tag != "slots") parse_error(lineno, "expected 'slots <n>'");
    for (std::size_t k = 0; k < n_slots; ++k) {
        next_line(ls);
        std::size_t slot = 0;
        int teacher = 0, rp = 0, skip = 0, qual = 0, order = 0;
        double cutoff = 0.0, amplitude = 0.0;
        std::string t1, t2, t3, t4, t5, t6, t7;
        if (!(ls >> tag >> slot >> t1 >> teacher >> t2 >> rp >> t3 >> skip >> t4 >> qual >> t5 >>
              cutoff >> t6 >> order >> t7 >> amplitude) ||
            tag != "slot" || t1 != "teacher" || t2 != "rp" || t3 != "skip" ||
            t4 != "qualification" || t5 != "cutoff" || t6 != "order" || t7 != "amplitude")
            parse_error(lineno, "expected 'slot <k> teacher <id> rp <id> skip <s> "
                                "qualification <q> cutoff <c> order <o> amplitude <a>'");
        chrom.subs[1].features.push_back({teacher, {}});
        chrom.subs[2].features.push_back({rp, {static_cast<double>(skip)}});
        chrom.subs[3].features.push_back({qual, {cutoff, static_cast<double>(order), amplitude}});
    }
    return chrom;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << content;
    if (!os) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << is.rdbuf();
    return buffer.str();
}

} // namespace mmxblx::report
