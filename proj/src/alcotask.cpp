#include "mmxblx/alcotask.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mmxblx::alcotask {

Encoding make_encoding(int teacher_count, std::size_t sensor_subset_max,
                       std::size_t tpd_slots_max) {
    if (teacher_count < 1) throw std::invalid_argument("encoding: teacher_count must be >= 1");
    Encoding enc;
    enc.teacher_count = teacher_count;

    TaskSpec sensors;
    sensors.feature_min = 1;
    sensors.feature_max = static_cast<int>(kLeadCount);
    sensors.subset_min = 1;
    sensors.subset_max = sensor_subset_max;
    sensors.schema = {{4.0}, {-4.0}, {AttrKind::real}};

    TaskSpec teachers;
    teachers.feature_min = 1;
    teachers.feature_max = teacher_count;
    teachers.subset_min = 1;
    teachers.subset_max = tpd_slots_max;
    teachers.schema = {{}, {}, {}};

    TaskSpec refpoints;
    refpoints.feature_min = 97;
    refpoints.feature_max = 250;
    refpoints.subset_min = 1;
    refpoints.subset_max = tpd_slots_max;
    refpoints.schema = {{12.0}, {1.0}, {AttrKind::integer}};

    TaskSpec qualification;
    qualification.feature_min = 1;
    qualification.feature_max = 255;
    qualification.subset_min = 1;
    qualification.subset_max = tpd_slots_max;
    qualification.schema = {{20.0, 15.0, 1.0},
                            {0.1, 1.0, 0.0},
                            {AttrKind::real, AttrKind::integer, AttrKind::real}};

    enc.tasks = {sensors, teachers, refpoints, qualification};
    enc.groups = {{1, 2, 3}};
    for (const auto& t : enc.tasks) {
        const auto r = validate_task_spec(t);
        if (!r.ok()) throw std::invalid_argument("encoding: " + r.str());
    }
    return enc;
}

tpd::Signal composite_signal(const SubjectRecord& subject, const SubChromosome& sensors) {
    tpd::Signal out;
    out.samples.assign(kSampleCount, 0.0);
    for (const auto& f : sensors.features) {
        if (f.id < 1 || f.id > static_cast<int>(kLeadCount))
            throw std::invalid_argument("composite_signal: sensor id out of range");
        if (f.attributes.size() != 1)
            throw std::invalid_argument("composite_signal: sensor needs exactly one weight");
        const double w = f.attributes[0];
        const auto& lead = subject.leads[static_cast<std::size_t>(f.id - 1)];
        for (std::size_t t = 0; t < kSampleCount; ++t) out.samples[t] += w * lead[t];
    }
    return out;
}

std::vector<int> decode_qualification(int q) {
    if (q < 1 || q > 255) throw std::invalid_argument("decode_qualification: id outside [1, 255]");
    std::vector<int> phis;
    for (int j = 1; j <= 8; ++j)
        if (q & (1 << (j - 1))) phis.push_back(j);
    return phis;
}

tpd::ToleranceSpec build_tpd(const tpd::Signal& teacher, int rp, int skip,
                             const std::vector<int>& phis, double cutoff, int order,
                             double amplitude) {
    if (phis.empty()) throw std::invalid_argument("build_tpd: empty multiplier set");
    tpd::ToleranceSpec spec;
    spec.amplitude = amplitude;
    spec.cutoff = cutoff;
    spec.order = order;
    for (const int phi : phis) {
        const int lag = phi * skip;
        if (rp - lag < 1 || rp > static_cast<int>(teacher.size()))
            throw std::invalid_argument("build_tpd: lagged position outside teacher signal");
        spec.lags.push_back(lag);
        spec.supports.push_back(teacher.at1(static_cast<std::size_t>(rp)) -
                                teacher.at1(static_cast<std::size_t>(rp - lag)));
    }
    return spec;
}

double auc(const std::vector<double>& pos, const std::vector<double>& neg) {
    if (pos.empty() || neg.empty()) throw std::invalid_argument("auc: empty sample");
    struct Scored {
        double value;
        bool positive;
    };
    std::vector<Scored> all;
    all.reserve(pos.size() + neg.size());
    for (const double v : pos) all.push_back({v, true});
    for (const double v : neg) all.push_back({v, false});
    std::sort(all.begin(), all.end(),
              [](const Scored& a, const Scored& b) { return a.value < b.value; });

    // midranks over tie runs; rank sum of the positives gives U
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < all.size()) {
        std::size_t j = i;
        while (j < all.size() && all[j].value == all[i].value) ++j;
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k)
            if (all[k].positive) rank_sum_pos += midrank;
        i = j;
    }
    const double n_pos = static_cast<double>(pos.size());
    const double n_neg = static_cast<double>(neg.size());
    const double u = rank_sum_pos - n_pos * (n_pos + 1.0) / 2.0;
    return u / (n_pos * n_neg);
}

std::vector<const SubjectRecord*> collect_teachers(const std::vector<SubjectRecord>& train) {
    std::vector<const SubjectRecord*> out;
    for (const auto& s : train)
        if (s.label == Label::alcoholic) out.push_back(&s);
    return out;
}

double evaluate(const Chromosome& chrom, const std::vector<SubjectRecord>& train,
                const std::vector<const SubjectRecord*>& teachers, const Encoding& enc) {
    const auto check = validate_chromosome(chrom, enc.tasks, enc.groups);
    if (!check.ok()) throw std::invalid_argument("evaluate: invalid chromosome: " + check.str());
    if (teachers.empty()) throw std::invalid_argument("evaluate: no teacher signals");

    const SubChromosome& sensors = chrom.subs[0];
    const SubChromosome& teacher_ids = chrom.subs[1];
    const SubChromosome& refpoints = chrom.subs[2];
    const SubChromosome& quals = chrom.subs[3];

    // One TPD per linked-group slot. Teacher composites are rebuilt per
    // chromosome (the sensor weights differ) but cached across slots.
    std::map<int, tpd::Signal> teacher_cache;
    std::vector<tpd::ToleranceSpec> detectors;
    for (std::size_t k = 0; k < teacher_ids.size(); ++k) {
        const int tid = teacher_ids.features[k].id;
        if (tid < 1 || static_cast<std::size_t>(tid) > teachers.size())
            throw std::invalid_argument("evaluate: teacher id does not index a teacher signal");
        auto it = teacher_cache.find(tid);
        if (it == teacher_cache.end())
            it = teacher_cache.emplace(tid, composite_signal(*teachers[tid - 1], sensors)).first;

        const int rp = refpoints.features[k].id;
        const int skip = static_cast<int>(refpoints.features[k].attributes[0]);
        const int q = quals.features[k].id;
        const double cutoff = quals.features[k].attributes[0];
        const int order = static_cast<int>(quals.features[k].attributes[1]);
        const double amplitude = quals.features[k].attributes[2];
        detectors.push_back(
            build_tpd(it->second, rp, skip, decode_qualification(q), cutoff, order, amplitude));
    }

    std::vector<double> phi_alcoholic;
    std::vector<double> phi_control;
    for (const auto& subject : train) {
        const tpd::Signal composite = composite_signal(subject, sensors);
        double total = 0.0;
        for (const auto& det : detectors) total += tpd::scan_phi(composite, det);
        (subject.label == Label::alcoholic ? phi_alcoholic : phi_control).push_back(total);
    }
    return 1.0 - auc(phi_alcoholic, phi_control);
}

} // namespace mmxblx::alcotask
