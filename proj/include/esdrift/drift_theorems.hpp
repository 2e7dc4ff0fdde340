#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "esdrift/rng.hpp"
#include "esdrift/stats.hpp"

namespace esdrift {

/// A real-valued series X_t together with its truncation
///   Y_0 = X_0,  Y_{t+1} = Y_t + max{X_{t+1} - X_t, -A},
/// i.e. the same process with single-step progress capped at A.
struct TruncatedSeries {
    std::vector<double> xs;
    std::vector<double> ys;
    double truncation = 1.0;
};

TruncatedSeries truncate_series(std::span<const double> xs, double truncation);

/// min{t : series[t] <= threshold}, or nullopt if never reached.
std::optional<std::size_t> first_hitting_time(std::span<const double> series, double threshold);

/// Upper bound on E[T] for a process whose truncated drift (cap `truncation`)
/// is at most -drift: (x0 - beta + A) / B. Returns 0 when beta >= x0.
double truncated_drift_upper_bound(double x0, double beta, double truncation, double drift);

/// Lower bound on E[T] for a non-increasing process whose expected one-step
/// change is at least -max_drift: (x0 - beta) / (4 C) - 1/2.
double monotone_drift_lower_bound(double x0, double beta, double max_drift);

struct HittingSample {
    std::uint64_t time = 0;
    bool censored = false;  ///< horizon reached before the target
};

/// X stays put with probability 1 - p and drops by 1/p with probability p.
/// Its untruncated drift is -1 per step, yet E[T] is about 1/p.
HittingSample simulate_jump_process(double p, double x0, double beta, RandomStream& rng,
                                    std::uint64_t horizon = 10'000'000);

/// X_{t+1} = X_t - step + U(-noise, noise). With A >= step + noise no
/// increment is ever truncated and the truncated drift is exactly -step.
HittingSample simulate_additive_walk(double step, double noise, double x0, double beta,
                                     RandomStream& rng, std::uint64_t horizon = 10'000'000);

struct HittingTimeSummary {
    MeanEstimate time;  ///< over uncensored runs
    std::size_t censored = 0;
};

HittingTimeSummary summarize_hitting_times(std::span<const HittingSample> samples);

}  // namespace esdrift
