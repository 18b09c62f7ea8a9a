#pragma once

#include <vector>

#include "mmxblx/core.hpp"
#include "mmxblx/rng.hpp"

namespace mmxblx::blx {

/// Per-element bounds and datatypes for a blend. Integer-kind elements must
/// have integral bounds so that round-after-clamp stays inside them.
struct BlendBounds {
    std::vector<double> vmax;
    std::vector<double> vmin;
    std::vector<AttrKind> datatypes;

    static BlendBounds from_schema(const AttributeSchema& s) {
        return BlendBounds{s.max_values, s.min_values, s.datatypes};
    }
};

/// BLX-a blend of two parent vectors. Element-wise: draws uniformly on the
/// parental interval extended by |v1-v2|*a on each side, clamps to
/// [vmin, vmax], then rounds integer-kind elements half-away-from-zero.
/// One uniform draw is consumed per element regardless of the inputs, so the
/// stream position never depends on parent values.
std::vector<double> blend(const std::vector<double>& v1, const std::vector<double>& v2,
                          const BlendBounds& bounds, double a, RandomSource& rng);

/// Scalar convenience form of blend (real-kind, no rounding).
double blend_scalar(double w1, double w2, double upper, double lower, double a,
                    RandomSource& rng);

} // namespace mmxblx::blx
