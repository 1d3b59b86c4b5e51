#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace chaosnet {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
} // namespace detail

/// Deterministic random source. Distribution sampling is implemented by
/// hand (not via std:: distributions) so that identical seeds give
/// identical draws on every compiler and platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(detail::splitmix64(seed)) {}

    /// Derives an independent child stream; (seed, id) pairs map to
    /// distinct, reproducible streams.
    static Rng stream(std::uint64_t seed, std::uint64_t id) {
        return Rng(detail::splitmix64(seed ^ detail::splitmix64(id)));
    }
    static Rng stream(std::uint64_t seed, std::uint64_t id_a, std::uint64_t id_b) {
        return Rng(detail::splitmix64(detail::splitmix64(seed ^ detail::splitmix64(id_a)) ^
                                      detail::splitmix64(id_b)));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform index in [0, bound). bound must be nonzero.
    std::size_t next_index(std::size_t bound) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(engine_()) * bound) >> 64);
    }

    /// Standard normal via Box-Muller.
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_unit();
        double u2 = next_unit();
        while (u1 == 0.0) u1 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace chaosnet
