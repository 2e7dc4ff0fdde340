#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace esdrift {

/// Seedable random stream. Every replicate or grid point gets its own
/// stream via `derive_stream`, so results do not depend on scheduling.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    bool bernoulli(double p) { return uniform() < p; }

    void fill_normal(std::span<double> out) {
        for (double& x : out) x = normal_(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stream for task `index` of an experiment seeded with `master_seed`.
RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t index);

}  // namespace esdrift
