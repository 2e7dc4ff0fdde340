#pragma once

#include <span>

#include "esdrift/es_core.hpp"
#include "esdrift/rng.hpp"
#include "esdrift/stats.hpp"

namespace esdrift {

/// Log progress reported when the line search lands exactly on the optimum.
inline constexpr double kCappedLogProgress = 700.0;

/// argmin over gamma of ||m + gamma * delta||^2, i.e. -(m . delta) / ||delta||^2.
double optimal_step_length(std::span<const double> m, std::span<const double> delta);

struct LineSearchStep {
    Vector point;               ///< m + gamma* delta
    double log_progress = 0.0;  ///< log||m|| - log||point||, >= 0
    bool capped = false;        ///< point was the optimum; log_progress is the cap
};

/// Exact line search along a given direction.
LineSearchStep line_search_step(std::span<const double> m, std::span<const double> delta);

/// Line search along delta = sigma * N(0, I).
LineSearchStep har_step(std::span<const double> m, double sigma, RandomStream& rng);

/// Angle theta in [0, pi] between a Gaussian direction and the direction to
/// the optimum, and the progress term -log(sin theta) * 1{theta <= pi/2}.
/// For theta > pi/2 the direction points away from the optimum and the
/// (1+1)-ES step would be rejected, so the indicator form still bounds the
/// ES progress sample by sample.
struct AngleSample {
    double angle = 0.0;
    double log_progress = 0.0;
    bool capped = false;
};

AngleSample sample_progress_angle(int dim, RandomStream& rng);

/// Monte Carlo mean of the indicator progress term with a 99% half-width.
MeanEstimate expected_log_progress_mc(int dim, std::size_t n, RandomStream& rng);

/// W_n = integral over [0, pi/2] of sin^n.
double wallis_integral(int n);

/// (2 W_{d-2})^{-1} * integral over [0, pi/2] of -log(sin t) sin^{d-2}(t) dt.
double expected_log_progress_quadrature(int dim, double tol = 1e-12);

}  // namespace esdrift
