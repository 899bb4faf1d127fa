#pragma once

#include <cmath>
#include <cstdint>

#include "sliding/vec.hpp"

namespace sliding {

// Counter-based deterministic generator. Every output is a pure function of
// (seed, stream, counter), so draws can be replayed or indexed at random and
// parallel sweeps stay reproducible. Algorithm code never touches a global
// RNG.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed = 0, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {}

    // Uniform in (0, 1], as a function of the given counter value.
    double u01_at(std::uint64_t counter) const {
        return to_unit(mix(counter));
    }

    // Standard normal via Box-Muller; consumes counters 2*index and 2*index+1.
    double gaussian_at(std::uint64_t index) const {
        const double u1 = to_unit(mix(2 * index));
        const double u2 = to_unit(mix(2 * index + 1));
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    double next_u01() { return u01_at(next_++); }
    double next_gaussian() { return gaussian_at(next_++); }

    // Vector of iid standard normals, consuming `dim` sequential draw indices.
    Vector next_gaussians(Eigen::Index dim) {
        Vector z(dim);
        for (Eigen::Index i = 0; i < dim; ++i) z[i] = gaussian_at(next_++);
        return z;
    }

    // Independent child stream; the parent's counter is unaffected.
    CounterRng split(std::uint64_t child) const {
        return CounterRng(seed_, splitmix(stream_ ^ (0x9e3779b97f4a7c15ULL + child)));
    }

    std::uint64_t draws_used() const { return next_; }
    void reset() { next_ = 0; }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    static std::uint64_t splitmix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t mix(std::uint64_t counter) const {
        return splitmix(splitmix(splitmix(seed_) ^ stream_) ^ counter);
    }

    static double to_unit(std::uint64_t bits) {
        // (0,1]: never returns 0, so log() is safe.
        return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t next_ = 0;
};

// Seeded standard-normal vector helper for data generation.
inline Vector gaussian_vector(Eigen::Index dim, std::uint64_t seed, std::uint64_t stream = 0) {
    CounterRng rng(seed, stream);
    return rng.next_gaussians(dim);
}

} // namespace sliding
