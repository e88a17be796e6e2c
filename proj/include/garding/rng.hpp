#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>

namespace garding {

/// FNV-1a. Used to derive per-campaign streams from (seed, name) without
/// relying on implementation-defined std::hash.
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Deterministic random stream. The engine is the fully specified
/// mt19937_64 and all conversions are explicit, so a (seed, stream) pair
/// samples identically everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    Rng(std::uint64_t seed, const std::string& stream) : eng_(seed ^ fnv1a64(stream)) {}

    std::uint64_t bits() { return eng_(); }

    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; } // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) { // inclusive bounds
        return lo + int(eng_() % std::uint64_t(hi - lo + 1));
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        constexpr double two_pi = 6.283185307179586476925286766559;
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(two_pi * u2);
        have_spare_ = true;
        return r * std::cos(two_pi * u2);
    }

    std::complex<double> cnormal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace garding
