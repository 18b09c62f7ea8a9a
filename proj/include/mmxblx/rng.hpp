#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace mmxblx {

/// splitmix64 finalizer; used to mix seeds for derived streams.
inline std::uint64_t mix_seed(std::uint64_t s) {
    s += 0x9e3779b97f4a7c15ULL;
    s = (s ^ (s >> 30)) * 0xbf58476d1ce4e5b9ULL;
    s = (s ^ (s >> 27)) * 0x94d049bb133111ebULL;
    return s ^ (s >> 31);
}

/// Combines a base seed with stream coordinates (e.g. generation, pair index,
/// offspring index) into an independent sub-stream seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    std::uint64_t h = mix_seed(base);
    h = mix_seed(h ^ a);
    h = mix_seed(h ^ b);
    h = mix_seed(h ^ c);
    return h;
}

/// Deterministic random source. Same seed gives the same draw sequence on
/// every platform: the engine is the fully specified std::mt19937_64 and all
/// distributions are hand-rolled (the standard library distribution objects
/// are implementation-defined and would break cross-platform reproducibility).
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform real on [a, b]. Always consumes exactly one engine draw, even
    /// when a == b, so the stream position is input-independent.
    double uniform_real(double a, double b) {
        if (a > b) throw std::invalid_argument("uniform_real: a > b");
        const double u = (next_u64() >> 11) * 0x1.0p-53; // [0, 1)
        return a + (b - a) * u;
    }

    /// Uniform integer on {a, ..., b}, unbiased (rejection sampling).
    std::int64_t uniform_int(std::int64_t a, std::int64_t b) {
        if (a > b) throw std::invalid_argument("uniform_int: a > b");
        const std::uint64_t n = static_cast<std::uint64_t>(b) - static_cast<std::uint64_t>(a) + 1;
        if (n == 0) return static_cast<std::int64_t>(next_u64()); // full 64-bit range
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return a + static_cast<std::int64_t>(r % n);
        }
    }

    bool bernoulli(double p) { return uniform_real(0.0, 1.0) < p; }

    /// Unbiased Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// k distinct indices drawn uniformly from {0, ..., n-1} (partial Fisher-Yates).
    std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
        if (k > n) throw std::invalid_argument("sample_indices: k > n");
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        for (std::size_t i = 0; i < k; ++i) {
            const auto j = static_cast<std::size_t>(
                uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(n) - 1));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        return idx;
    }

    /// Standard normal via Box-Muller (both values used, so draw count stays even).
    double normal(double mean, double sd) {
        if (!have_spare_) {
            const double u1 = uniform_real(0.0, 1.0);
            const double u2 = uniform_real(0.0, 1.0);
            const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
            const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
            spare_ = r * std::sin(theta);
            have_spare_ = true;
            return mean + sd * (r * std::cos(theta));
        }
        have_spare_ = false;
        return mean + sd * spare_;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace mmxblx
