#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "esdrift/rng.hpp"

namespace esdrift {

using Vector = std::vector<double>;

/// Squared Euclidean norm; the sphere objective f(x) = ||x||^2.
double sphere_eval(std::span<const double> x);

double euclidean_norm(std::span<const double> x);

struct ESParams {
    double alpha = 1.5;  ///< step-size multiplier on success; failures use alpha^{-1/4}
    int dim = 10;

    /// Throws DomainError unless alpha > 1 and dim >= 2.
    void validate() const;
};

/// Mean of the sampling distribution (also the best point so far), the step
/// size, and the iteration counter.
struct ESState {
    Vector mean;
    double sigma = 1.0;
    std::uint64_t t = 0;

    int dim() const { return static_cast<int>(mean.size()); }
    void validate() const;

    /// State with ||mean|| = norm along the first axis and d*sigma/norm = sigma_bar.
    static ESState on_axis(int dim, double norm, double sigma_bar);
};

struct StepOutcome {
    bool success = false;
    double offspring_norm = 0.0;
    double log_progress = 0.0;  ///< log||m_t|| - log||m_{t+1}||, zero on failure
};

/// d * sigma / ||m||. Throws DomainError at the optimum.
double normalized_step_size(const ESState& state);

/// One iteration of the (1+1)-ES with the one-fifth success rule, using the
/// caller's standard normal vector `z` for the offspring m + sigma * z.
/// Acceptance is f(x) <= f(m). Updates `state` in place.
StepOutcome es_step(ESState& state, const ESParams& params, std::span<const double> z);

/// Same as above, drawing `z` from `rng`.
StepOutcome es_step(ESState& state, const ESParams& params, RandomStream& rng);

struct TraceRecord {
    std::uint64_t t = 0;
    double norm_m = 0.0;
    double sigma = 0.0;
    double sigma_bar = 0.0;
    bool success = false;      ///< outcome of the step that produced this state
    double potential = 0.0;    ///< NaN unless RunOptions::potential is set
    double truncated_delta = 0.0;  ///< max{V_t - V_{t-1}, -A}; NaN at t = 0 or without potential
};

struct RunTrace {
    std::vector<TraceRecord> records;
    std::optional<std::uint64_t> hitting_time;
    ESState final_state;
    std::uint64_t successes = 0;
    std::uint64_t failures = 0;
};

struct RunOptions {
    double epsilon = 1e-8;
    std::uint64_t max_iter = 10'000'000;
    std::uint64_t record_every = 1;  ///< 0 records only the first and final states
    std::function<double(const ESState&)> potential;  ///< optional V(theta) for the trace
    double truncation = 0.0;  ///< A for truncated increments; needs `potential`
};

/// Iterates es_step until ||m_t|| <= epsilon or max_iter steps were taken.
/// The initial and final states are always recorded.
RunTrace run_until(ESState state, const ESParams& params, const RunOptions& options,
                   RandomStream& rng);

}  // namespace esdrift
