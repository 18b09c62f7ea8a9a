#include "mmxblx/crossover.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mmxblx::crossover {

namespace {

Feature take_random(std::vector<Feature>& bag, RandomSource& rng) {
    const auto i = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(bag.size()) - 1));
    Feature f = std::move(bag[i]);
    bag[i] = std::move(bag.back());
    bag.pop_back();
    return f;
}

// All two-bag choices pair some bag with the absent bag listed second, so the
// orientation switch reduces to the probability of taking the first bag.
bool take_first_bag(double delta, DeltaSelects sel, RandomSource& rng) {
    const double p_first = (sel == DeltaSelects::first_bag) ? delta : 1.0 - delta;
    return rng.bernoulli(p_first);
}

} // namespace

std::size_t offspring_length(std::size_t len1, std::size_t len2, const TaskSpec& spec,
                             double alpha, RandomSource& rng) {
    const double l1 = static_cast<double>(len1);
    const double l2 = static_cast<double>(len2);
    const double vmin = std::min(l1 - alpha, l2 - alpha);
    const double vmax = std::max(l1 + alpha, l2 + alpha);
    const double raw = blx::blend_scalar(vmin, vmax, static_cast<double>(spec.subset_max),
                                         static_cast<double>(spec.subset_min), 0.0, rng);
    double len = std::round(raw);
    len = std::clamp(len, static_cast<double>(spec.subset_min),
                     static_cast<double>(spec.subset_max));
    return static_cast<std::size_t>(len);
}

RawPartition partition(const SubChromosome& p1, const SubChromosome& p2, const TaskSpec& spec) {
    std::map<int, const std::vector<double>*> ids1;
    std::map<int, const std::vector<double>*> ids2;
    for (const auto& f : p1.features) ids1[f.id] = &f.attributes;
    for (const auto& f : p2.features) ids2[f.id] = &f.attributes;

    RawPartition out;
    for (int id = spec.feature_min; id <= spec.feature_max; ++id) {
        const auto it1 = ids1.find(id);
        const auto it2 = ids2.find(id);
        if (it1 != ids1.end() && it2 != ids2.end()) {
            out.common.push_back({id, *it1->second, *it2->second});
        } else if (it1 != ids1.end()) {
            out.unique.push_back({id, *it1->second});
        } else if (it2 != ids2.end()) {
            out.unique.push_back({id, *it2->second});
        } else {
            out.absent.push_back(id);
        }
    }
    return out;
}

std::vector<double> blend_common(const std::vector<double>& att1, const std::vector<double>& att2,
                                 const AttributeSchema& schema, double beta, RandomSource& rng) {
    return blx::blend(att1, att2, blx::BlendBounds::from_schema(schema), beta, rng);
}

std::vector<double> perturb_unique(const std::vector<double>& att, const AttributeSchema& schema,
                                   double gamma, RandomSource& rng) {
    const std::size_t n = schema.length();
    if (att.size() != n) throw std::invalid_argument("perturb_unique: attribute length mismatch");
    std::vector<double> lower(n), upper(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double half = (schema.max_values[k] - schema.min_values[k]) * gamma / 2.0;
        lower[k] = att[k] - half;
        upper[k] = att[k] + half;
    }
    return blx::blend(upper, lower, blx::BlendBounds::from_schema(schema), 0.0, rng);
}

std::vector<double> sample_absent(const AttributeSchema& schema, RandomSource& rng) {
    return blx::blend(schema.max_values, schema.min_values, blx::BlendBounds::from_schema(schema),
                      0.0, rng);
}

FeatureBags build_bags(const SubChromosome& p1, const SubChromosome& p2, const TaskSpec& spec,
                       const CrossoverParams& params, RandomSource& rng) {
    const RawPartition raw = partition(p1, p2, spec);
    FeatureBags bags;
    bags.common.reserve(raw.common.size());
    bags.unique.reserve(raw.unique.size());
    bags.absent.reserve(raw.absent.size());
    for (const auto& e : raw.common)
        bags.common.push_back({e.id, blend_common(e.att1, e.att2, spec.schema, params.beta, rng)});
    for (const auto& e : raw.unique)
        bags.unique.push_back({e.id, perturb_unique(e.att, spec.schema, params.gamma, rng)});
    for (const int id : raw.absent) bags.absent.push_back({id, sample_absent(spec.schema, rng)});
    return bags;
}

std::pair<std::vector<Feature>, DrawTally> inherit_exploit(FeatureBags bags,
                                                           std::size_t target_len, double delta,
                                                           DeltaSelects sel, RandomSource& rng) {
    if (bags.common.size() + bags.unique.size() + bags.absent.size() < target_len)
        throw std::invalid_argument("inherit_exploit: bags smaller than target length");
    std::vector<Feature> out;
    out.reserve(target_len);
    DrawTally tally;
    while (out.size() < target_len && !bags.common.empty()) {
        out.push_back(take_random(bags.common, rng));
        ++tally.from_common;
    }
    while (out.size() < target_len) {
        bool from_unique;
        if (bags.unique.empty())
            from_unique = false;
        else if (bags.absent.empty())
            from_unique = true;
        else
            from_unique = take_first_bag(delta, sel, rng);
        if (from_unique) {
            out.push_back(take_random(bags.unique, rng));
            ++tally.from_unique;
        } else {
            out.push_back(take_random(bags.absent, rng));
            ++tally.from_absent;
        }
    }
    return {std::move(out), tally};
}

std::pair<std::vector<Feature>, DrawTally> inherit_explore(FeatureBags bags,
                                                           std::size_t target_len, double delta,
                                                           DeltaSelects sel, RandomSource& rng) {
    if (bags.common.size() + bags.unique.size() + bags.absent.size() < target_len)
        throw std::invalid_argument("inherit_explore: bags smaller than target length");
    std::vector<Feature> out;
    out.reserve(target_len);
    DrawTally tally;
    while (out.size() < target_len) {
        if (!bags.common.empty() && !bags.absent.empty()) {
            if (take_first_bag(delta, sel, rng)) {
                out.push_back(take_random(bags.common, rng));
                ++tally.from_common;
            } else {
                out.push_back(take_random(bags.absent, rng));
                ++tally.from_absent;
            }
        } else if (bags.common.empty() && !bags.absent.empty()) {
            bool from_unique;
            if (bags.unique.empty())
                from_unique = false;
            else
                from_unique = take_first_bag(delta, sel, rng);
            if (from_unique) {
                out.push_back(take_random(bags.unique, rng));
                ++tally.from_unique;
            } else {
                out.push_back(take_random(bags.absent, rng));
                ++tally.from_absent;
            }
        } else if (!bags.common.empty()) {
            out.push_back(take_random(bags.common, rng));
            ++tally.from_common;
        } else {
            out.push_back(take_random(bags.unique, rng));
            ++tally.from_unique;
        }
    }
    return {std::move(out), tally};
}

CrossoverResult crossover_chromosome(const Chromosome& p1, const Chromosome& p2,
                                     const std::vector<TaskSpec>& specs,
                                     const CrossoverParams& params, const LinkedGroups& groups,
                                     RandomSource& rng) {
    const auto check1 = validate_chromosome(p1, specs, groups);
    if (!check1.ok())
        throw std::invalid_argument("crossover: parent 1 invalid: " + check1.str());
    const auto check2 = validate_chromosome(p2, specs, groups);
    if (!check2.ok())
        throw std::invalid_argument("crossover: parent 2 invalid: " + check2.str());

    const std::size_t n_tasks = specs.size();
    // group_of[i] = index into groups, or npos for ungrouped tasks
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> group_of(n_tasks, npos);
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (const auto t : groups[g]) group_of[t] = g;
    std::vector<std::size_t> group_len(groups.size(), 0);
    std::vector<bool> group_drawn(groups.size(), false);

    CrossoverResult result;
    result.child.subs.resize(n_tasks);
    result.tallies.resize(n_tasks);

    for (std::size_t i = 0; i < n_tasks; ++i) {
        std::size_t target;
        const std::size_t g = group_of[i];
        if (g != npos) {
            if (!group_drawn[g]) {
                group_len[g] = offspring_length(p1.subs[i].size(), p2.subs[i].size(), specs[i],
                                                params.alpha, rng);
                group_drawn[g] = true;
            }
            target = group_len[g];
        } else {
            target = offspring_length(p1.subs[i].size(), p2.subs[i].size(), specs[i],
                                      params.alpha, rng);
        }

        FeatureBags bags = build_bags(p1.subs[i], p2.subs[i], specs[i], params, rng);
        auto [features, tally] =
            params.mode == CrossoverMode::exploit
                ? inherit_exploit(std::move(bags), target, params.delta, params.delta_selects, rng)
                : inherit_explore(std::move(bags), target, params.delta, params.delta_selects, rng);
        result.child.subs[i].task_index = i;
        result.child.subs[i].features = std::move(features);
        result.tallies[i] = tally;
    }

    const auto check = validate_chromosome(result.child, specs, groups);
    if (!check.ok())
        throw std::logic_error("crossover: produced invalid offspring: " + check.str());
    return result;
}

} // namespace mmxblx::crossover
