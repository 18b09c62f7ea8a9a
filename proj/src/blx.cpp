#include "mmxblx/blx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmxblx::blx {

std::vector<double> blend(const std::vector<double>& v1, const std::vector<double>& v2,
                          const BlendBounds& bounds, double a, RandomSource& rng) {
    const std::size_t n = v1.size();
    if (v2.size() != n || bounds.vmax.size() != n || bounds.vmin.size() != n ||
        bounds.datatypes.size() != n)
        throw std::invalid_argument("blx: vector length mismatch");
    if (!(a >= 0.0)) throw std::invalid_argument("blx: a must be non-negative");

    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double range = std::abs(v1[k] - v2[k]);
        const double r1 = std::min(v1[k], v2[k]) - range * a;
        const double r2 = std::max(v1[k], v2[k]) + range * a;
        double val = rng.uniform_real(r1, r2);
        if (val > bounds.vmax[k]) val = bounds.vmax[k];
        if (val < bounds.vmin[k]) val = bounds.vmin[k];
        if (bounds.datatypes[k] == AttrKind::integer) val = std::round(val);
        out[k] = val;
    }
    return out;
}

double blend_scalar(double w1, double w2, double upper, double lower, double a,
                    RandomSource& rng) {
    if (upper < lower) throw std::invalid_argument("blx: upper < lower");
    const BlendBounds b{{upper}, {lower}, {AttrKind::real}};
    return blend({w1}, {w2}, b, a, rng)[0];
}

} // namespace mmxblx::blx
