#include "mmxblx/core.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace mmxblx {

namespace {

bool is_integral_value(double v) { return std::isfinite(v) && v == std::round(v); }

void check_schema(const AttributeSchema& s, const std::string& where,
                  std::vector<std::string>& out) {
    const std::size_t n = s.datatypes.size();
    if (s.max_values.size() != n || s.min_values.size() != n) {
        out.push_back(where + ": attribute bound lists have unequal lengths");
        return;
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (s.max_values[k] < s.min_values[k]) {
            std::ostringstream os;
            os << where << ": attribute element " << k << " has max < min";
            out.push_back(os.str());
        }
        if (s.datatypes[k] == AttrKind::integer &&
            (!is_integral_value(s.max_values[k]) || !is_integral_value(s.min_values[k]))) {
            std::ostringstream os;
            os << where << ": integer attribute element " << k << " has non-integral bounds";
            out.push_back(os.str());
        }
    }
}

} // namespace

std::string ValidationReport::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i];
    }
    return os.str();
}

ValidationReport validate_schema(const AttributeSchema& schema) {
    ValidationReport r;
    check_schema(schema, "schema", r.violations);
    return r;
}

ValidationReport validate_task_spec(const TaskSpec& spec) {
    ValidationReport r;
    if (spec.feature_max < spec.feature_min)
        r.violations.push_back("task: feature_max < feature_min");
    if (spec.subset_min == 0) r.violations.push_back("task: subset_min must be > 0");
    if (spec.subset_max < spec.subset_min) r.violations.push_back("task: subset_max < subset_min");
    if (spec.feature_max >= spec.feature_min && spec.universe_size() <= spec.subset_max)
        r.violations.push_back("task: universe size must exceed subset_max");
    check_schema(spec.schema, "task schema", r.violations);
    return r;
}

ValidationReport validate_chromosome(const Chromosome& c, const std::vector<TaskSpec>& specs,
                                     const LinkedGroups& groups) {
    ValidationReport r;
    if (c.subs.size() != specs.size()) {
        std::ostringstream os;
        os << "chromosome has " << c.subs.size() << " sub-chromosomes, expected " << specs.size();
        r.violations.push_back(os.str());
        return r;
    }
    for (std::size_t i = 0; i < c.subs.size(); ++i) {
        const auto& sub = c.subs[i];
        const auto& spec = specs[i];
        std::ostringstream tag;
        tag << "task " << i;
        if (sub.task_index != i) r.violations.push_back(tag.str() + ": task_index mismatch");
        if (sub.size() < spec.subset_min || sub.size() > spec.subset_max) {
            std::ostringstream os;
            os << tag.str() << ": subset size " << sub.size() << " outside ["
               << spec.subset_min << ", " << spec.subset_max << "]";
            r.violations.push_back(os.str());
        }
        std::set<int> seen;
        for (const auto& f : sub.features) {
            if (!seen.insert(f.id).second) {
                std::ostringstream os;
                os << tag.str() << ": duplicate feature id " << f.id;
                r.violations.push_back(os.str());
            }
            if (f.id < spec.feature_min || f.id > spec.feature_max) {
                std::ostringstream os;
                os << tag.str() << ": feature id " << f.id << " outside ["
                   << spec.feature_min << ", " << spec.feature_max << "]";
                r.violations.push_back(os.str());
            }
            if (f.attributes.size() != spec.schema.length()) {
                std::ostringstream os;
                os << tag.str() << ": feature " << f.id << " has " << f.attributes.size()
                   << " attributes, expected " << spec.schema.length();
                r.violations.push_back(os.str());
                continue;
            }
            for (std::size_t k = 0; k < f.attributes.size(); ++k) {
                const double v = f.attributes[k];
                if (v < spec.schema.min_values[k] || v > spec.schema.max_values[k]) {
                    std::ostringstream os;
                    os << tag.str() << ": feature " << f.id << " attribute " << k
                       << " value " << v << " out of bounds";
                    r.violations.push_back(os.str());
                }
                if (spec.schema.datatypes[k] == AttrKind::integer && !is_integral_value(v)) {
                    std::ostringstream os;
                    os << tag.str() << ": feature " << f.id << " attribute " << k
                       << " not an exact integer";
                    r.violations.push_back(os.str());
                }
            }
        }
    }
    for (const auto& group : groups) {
        if (group.empty()) continue;
        bool in_range = true;
        for (const auto t : group)
            if (t >= c.subs.size()) in_range = false;
        if (!in_range) {
            r.violations.push_back("linked group references a task index out of range");
            continue;
        }
        const std::size_t len = c.subs[group.front()].size();
        for (const auto t : group) {
            if (c.subs[t].size() != len) {
                r.violations.push_back("linked lengths unequal across linked group");
                break;
            }
        }
    }
    return r;
}

} // namespace mmxblx
