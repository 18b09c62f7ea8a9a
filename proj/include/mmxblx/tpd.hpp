#pragma once

#include <cstddef>
#include <vector>

namespace mmxblx::tpd {

/// A fully specified temporal pattern detector: a set of distinct backward
/// lags, one desired amplitude difference (support) per lag, and a shared
/// tolerance shape (amplitude, cutoff, order).
struct ToleranceSpec {
    std::vector<int> lags;
    std::vector<double> supports;
    double amplitude = 1.0;
    double cutoff = 1.0;
    int order = 1;

    int max_lag() const;
};

/// Discrete time series with 1-based indexing in all formulas.
struct Signal {
    std::vector<double> samples;

    std::size_t size() const { return samples.size(); }
    double at1(std::size_t i) const { return samples[i - 1]; }
};

/// Tolerance value for one amplitude difference:
/// amplitude / (1 + ((diff - support)/cutoff)^(2*order)).
/// Peaks at amplitude when diff equals the support and halves at
/// diff = support +- cutoff for any order.
double psi(double diff, double support, const ToleranceSpec& spec);

/// Product of psi over all lags at head position x_head (1-based).
/// Requires max_lag < x_head <= |f|.
double big_psi(const Signal& f, std::size_t x_head, const ToleranceSpec& spec);

/// Sum of big_psi over every admissible head position, i.e. the detector's
/// total match score for the signal. Requires |f| > max_lag.
double scan_phi(const Signal& f, const ToleranceSpec& spec);

} // namespace mmxblx::tpd
