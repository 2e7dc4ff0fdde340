#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "esdrift/es_core.hpp"
#include "esdrift/rng.hpp"
#include "esdrift/stats.hpp"

namespace esdrift {

/// Every constant of the drift argument for one dimension. The comment on
/// each member gives the conventional symbol, which is also its JSON key.
struct DriftConstants {
    int dim = 0;
    double alpha = 0.0;

    double psucc_at_upper = 0.0;  ///< p_u: success probability at the upper band edge
    double psucc_at_lower = 0.0;  ///< p_l: success probability at the lower band edge
    double band_lower = 0.0;      ///< ell: p^succ_{0,d}(ell) = p_l
    double band_upper = 0.0;      ///< u:   p^succ_{0,d}(u)   = p_u

    double truncation = 0.0;      ///< A = 1/d
    double penalty_weight = 0.0;  ///< v = p' / (2 d log alpha)
    double rate = 0.0;            ///< r = 1 - exp(-A / (1 - v))
    double rate_bound = 0.0;      ///< r' >= r
    double band_min_psucc = 0.0;        ///< p* = min over [ell, u] of p^succ_{r,d}
    double band_min_psucc_bound = 0.0;  ///< p' = min over [ell, u] of p^succ_{r',d}

    double drift_bound = 0.0;          ///< B: truncated drift is <= -B everywhere
    double drift_bound_floor = 0.0;    ///< L <= B
    double drift_bound_ceiling = 0.0;  ///< U >= B

    /// Re-checks every inequality the drift argument relies on. Throws
    /// ConfigurationError naming the first violated one.
    void check() const;
};

enum class Regime { small_sigma, reasonable_sigma, large_sigma };

std::string_view to_string(Regime regime);

/// small iff sigma_bar < ell, large iff sigma_bar > u.
Regime classify(double sigma_bar, const DriftConstants& c);

/// Builds the full constant pipeline for (d, alpha, p_u, p_l).
///
/// When d log(alpha) <= 1 the usual r' = 1 - exp(-log a / (d log a - 1)) is
/// undefined; r' is then taken at the bound v <= p_u / (2 d log alpha), which
/// still guarantees r' >= r. Throws ConfigurationError on any violated
/// constraint, DomainError on malformed arguments.
DriftConstants derive_constants(int dim, double alpha, double psucc_at_upper = 0.1,
                                double psucc_at_lower = 0.3);

/// min over sigma_bar in [lower, upper] of p^succ_{rate,dim}(sigma_bar): 256-point
/// log grid, golden-section refinement of the best cell, endpoints included.
double minimize_psucc_over_band(int dim, double rate, double lower, double upper,
                                double tol = 1e-10);

/// V(theta) - log||m|| as a function of the normalized step size.
double potential_excess(double sigma_bar, const DriftConstants& c);

/// V(theta) = log||m|| + max{0, v log(alpha ell / sigma_bar), v log(alpha^{1/4} sigma_bar / u)}.
/// Throws DomainError at the optimum.
double potential(const ESState& state, const DriftConstants& c);

/// max{v_next - v_now, -A}
double truncated_delta(double v_now, double v_next, double truncation);

/// Closed-form per-regime drift bound from the case analysis:
/// small: -v log a (5 p_l - 1)/4, large: -v log a (1 - 5 p_u)/4,
/// reasonable: -A p* + 5/4 v log a.
double regime_drift_bound(Regime regime, const DriftConstants& c);

/// Monte Carlo estimate of E[max{V(theta_{t+1}) - V(theta_t), -A} | theta_t]
/// from n independent one-step transitions out of `state`, with a 99%
/// half-width. n must be at least 1000.
MeanEstimate estimate_truncated_drift(const ESState& state, const DriftConstants& c,
                                      std::size_t n, RandomStream& rng);

struct DriftMapRow {
    double sigma_bar = 0.0;
    Regime regime = Regime::reasonable_sigma;
    MeanEstimate drift;
    bool satisfied = false;  ///< drift.mean + drift.half_width <= -B
};

/// Truncated drift at ||m|| = 1, sigma = sigma_bar / d for each grid point.
/// Point i uses derive_stream(seed, i).
std::vector<DriftMapRow> drift_map(const DriftConstants& c, std::span<const double> sigma_bar_grid,
                                   std::size_t n, std::uint64_t seed, unsigned workers = 0);

/// Log-spaced grid of `count` points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

struct HittingTimeBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool trivial = false;  ///< epsilon >= ||m_0||: the target is already reached
};

/// lower = (log||m_0|| - log eps) d/4 - 1/2, upper = (V(theta_0) - log eps + 1/d) / B.
HittingTimeBounds hitting_time_bounds(const ESState& state0, const DriftConstants& c,
                                      double epsilon);

}  // namespace esdrift
