// rng.hpp
// Seeded random streams for reproducible Monte Carlo runs.

#pragma once

#include <cmath>
#include <cstdint>

namespace fieldcmp {

// Small counter-based generator (splitmix64 mixer). Chosen over std::mt19937
// because the uniform/normal draws below are implemented by hand, so a run is
// bit-reproducible across standard libraries and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed), seed_(seed) {}

    // splitmix64 finalizer; also used to derive per-trial seeds.
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    // Independent stream for one trial: hash(master_seed, trial_index).
    // Trials drawn this way can run in any order or concurrently.
    static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
        return Rng(mix(master_seed ^ mix(trial_index)));
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal, Marsaglia polar method.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

private:
    std::uint64_t state_;
    std::uint64_t seed_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace fieldcmp
