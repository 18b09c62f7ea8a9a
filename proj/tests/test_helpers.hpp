#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "mmxblx/core.hpp"
#include "mmxblx/evolution.hpp"
#include "mmxblx/rng.hpp"
#include "mmxblx/tpd.hpp"

namespace testutil {

using namespace mmxblx;

/// One-sample Kolmogorov-Smirnov statistic against Uniform[lo, hi].
inline double ks_uniform(std::vector<double> xs, double lo, double hi) {
    std::sort(xs.begin(), xs.end());
    const auto n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double cdf = (xs[i] - lo) / (hi - lo);
        d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
        d = std::max(d, std::abs(cdf - static_cast<double>(i + 1) / n));
    }
    return d;
}

/// KS critical value at significance 0.01 for one sample of size n.
inline double ks_crit_01(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

/// Two-sample KS statistic. Ties (atoms from clamping) are consumed from
/// both samples before the gap is measured.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        const double fa = static_cast<double>(i) / static_cast<double>(a.size());
        const double fb = static_cast<double>(j) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

inline double ks_two_sample_crit_01(std::size_t n, std::size_t m) {
    return 1.628 * std::sqrt(static_cast<double>(n + m) /
                             (static_cast<double>(n) * static_cast<double>(m)));
}

/// True when an observed count of successes lies within 3 sigma of
/// Binomial(n, p).
inline bool within_3sigma(std::uint64_t successes, std::uint64_t n, double p) {
    const double mean = static_cast<double>(n) * p;
    const double sigma = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
    return std::abs(static_cast<double>(successes) - mean) <= 3.0 * sigma;
}

/// Brute-force re-statement of the detector equations with std::pow, kept
/// independent of the library implementation.
inline double oracle_scan_phi(const tpd::Signal& f, const tpd::ToleranceSpec& spec) {
    int max_lag = 0;
    for (const int g : spec.lags) max_lag = std::max(max_lag, g);
    double phi = 0.0;
    for (std::size_t head = static_cast<std::size_t>(max_lag) + 1; head <= f.size(); ++head) {
        double product = 1.0;
        for (std::size_t j = 0; j < spec.lags.size(); ++j) {
            const double diff =
                f.samples[head - 1] - f.samples[head - 1 - static_cast<std::size_t>(spec.lags[j])];
            const double t = (diff - spec.supports[j]) / spec.cutoff;
            product *= spec.amplitude / (1.0 + std::pow(t, 2.0 * spec.order));
        }
        phi += product;
    }
    return phi;
}

/// Exhaustive pairwise Mann-Whitney count, ties credited 0.5.
inline double oracle_auc(const std::vector<double>& pos, const std::vector<double>& neg) {
    double score = 0.0;
    for (const double p : pos)
        for (const double n : neg) score += p > n ? 1.0 : (p == n ? 0.5 : 0.0);
    return score / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

/// A small random task spec: modest universe, 0-3 attribute elements of mixed
/// kinds with integral bounds on integer elements.
inline TaskSpec random_task_spec(RandomSource& rng) {
    TaskSpec spec;
    spec.feature_min = static_cast<int>(rng.uniform_int(-5, 10));
    const int universe = static_cast<int>(rng.uniform_int(4, 20));
    spec.feature_max = spec.feature_min + universe - 1;
    spec.subset_max = static_cast<std::size_t>(rng.uniform_int(1, universe - 1));
    spec.subset_min = static_cast<std::size_t>(
        rng.uniform_int(1, static_cast<std::int64_t>(spec.subset_max)));
    const auto n_att = static_cast<std::size_t>(rng.uniform_int(0, 3));
    for (std::size_t k = 0; k < n_att; ++k) {
        const bool integer = rng.bernoulli(0.5);
        if (integer) {
            const double lo = static_cast<double>(rng.uniform_int(-10, 5));
            spec.schema.min_values.push_back(lo);
            spec.schema.max_values.push_back(lo + static_cast<double>(rng.uniform_int(0, 15)));
            spec.schema.datatypes.push_back(AttrKind::integer);
        } else {
            const double lo = rng.uniform_real(-10.0, 5.0);
            spec.schema.min_values.push_back(lo);
            spec.schema.max_values.push_back(lo + rng.uniform_real(0.0, 15.0));
            spec.schema.datatypes.push_back(AttrKind::real);
        }
    }
    return spec;
}

inline std::vector<TaskSpec> random_task_specs(RandomSource& rng, std::size_t n) {
    std::vector<TaskSpec> specs;
    for (std::size_t i = 0; i < n; ++i) specs.push_back(random_task_spec(rng));
    return specs;
}

/// One random valid chromosome for the given specs/groups.
inline Chromosome random_chromosome(const std::vector<TaskSpec>& specs, const LinkedGroups& groups,
                                    RandomSource& rng) {
    return evolution::init_population(specs, groups, 2, rng).front();
}

} // namespace testutil
