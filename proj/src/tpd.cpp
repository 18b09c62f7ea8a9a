#include "mmxblx/tpd.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmxblx::tpd {

namespace {

// base^exp by repeated squaring; exp >= 0
double ipow(double base, int exp) {
    double result = 1.0;
    double b = base;
    while (exp > 0) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

void check_spec(const ToleranceSpec& spec) {
    if (spec.lags.empty()) throw std::invalid_argument("tpd: lag set must be non-empty");
    if (spec.supports.size() != spec.lags.size())
        throw std::invalid_argument("tpd: supports and lags differ in length");
    if (!(spec.cutoff > 0.0)) throw std::invalid_argument("tpd: cutoff must be positive");
    if (spec.order < 1) throw std::invalid_argument("tpd: order must be >= 1");
    if (!(spec.amplitude >= 0.0)) throw std::invalid_argument("tpd: amplitude must be >= 0");
    for (std::size_t j = 0; j < spec.lags.size(); ++j) {
        if (spec.lags[j] < 1) throw std::invalid_argument("tpd: lags must be >= 1");
        for (std::size_t k = j + 1; k < spec.lags.size(); ++k)
            if (spec.lags[j] == spec.lags[k])
                throw std::invalid_argument("tpd: lags must be distinct");
    }
}

} // namespace

int ToleranceSpec::max_lag() const {
    return *std::max_element(lags.begin(), lags.end());
}

double psi(double diff, double support, const ToleranceSpec& spec) {
    const double t = (diff - support) / spec.cutoff;
    return spec.amplitude / (1.0 + ipow(t * t, spec.order));
}

namespace {

double big_psi_unchecked(const Signal& f, std::size_t x_head, const ToleranceSpec& spec) {
    double product = 1.0;
    for (std::size_t j = 0; j < spec.lags.size(); ++j) {
        const double diff = f.at1(x_head) - f.at1(x_head - static_cast<std::size_t>(spec.lags[j]));
        product *= psi(diff, spec.supports[j], spec);
    }
    return product;
}

} // namespace

double big_psi(const Signal& f, std::size_t x_head, const ToleranceSpec& spec) {
    check_spec(spec);
    if (x_head <= static_cast<std::size_t>(spec.max_lag()) || x_head > f.size())
        throw std::out_of_range("big_psi: x_head outside (max_lag, |f|]");
    return big_psi_unchecked(f, x_head, spec);
}

double scan_phi(const Signal& f, const ToleranceSpec& spec) {
    check_spec(spec);
    const auto m = static_cast<std::size_t>(spec.max_lag());
    if (f.size() <= m) throw std::invalid_argument("scan_phi: signal no longer than max lag");
    double sum = 0.0;
    for (std::size_t head = m + 1; head <= f.size(); ++head)
        sum += big_psi_unchecked(f, head, spec);
    return sum;
}

} // namespace mmxblx::tpd
