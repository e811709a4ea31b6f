#pragma once

#include <cstdint>
#include <random>

namespace jts {

// Seeded RNG stream. One per chain; replicate chains derive their own
// streams as seed + replicate index.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    // uniform integer in [lo, hi], inclusive
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(eng_);
    }

    std::int64_t uniform_i64(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
    }

    // uniform in [0, 1)
    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }

    bool coin() { return (eng_() & 1u) != 0; }

    double normal(double mean = 0.0, double sd = 1.0) {
        return std::normal_distribution<double>(mean, sd)(eng_);
    }

    double gamma(double shape, double scale) {
        return std::gamma_distribution<double>(shape, scale)(eng_);
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

}  // namespace jts
