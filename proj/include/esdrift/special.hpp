#pragma once

#include <cstddef>

namespace esdrift {

/// Standard normal CDF via the complementary error function.
double std_normal_cdf(double x);

/// log( x^a e^{-x} / Gamma(a+1) ) for a >= 0, x >= 0.
///
/// This is both the Poisson log-pmf (a integer, x the mean) and the step of
/// the incomplete-gamma recurrence. For large `a` it is evaluated through
/// log1p(z) - z and a Stirling correction so that a ~ x ~ 1e7 keeps full
/// relative accuracy instead of losing ~8 digits to cancellation.
double log_gamma_prefix(double a, double x);

/// Regularised lower incomplete gamma function P(a, x), a > 0, x >= 0.
/// Series for x < a + 1, Lentz continued fraction for Q otherwise.
double regularized_gamma_p(double a, double x);

/// Central chi-squared CDF with `dof` degrees of freedom.
double chi_squared_cdf(double dof, double x);

struct SeriesResult {
    double value = 0.0;
    double truncation_bound = 0.0;  ///< Poisson mass left out of the sum.
    std::size_t terms = 0;
};

/// Noncentral chi-squared CDF as a Poisson mixture of central CDFs:
///   F(x; k, lambda) = sum_j Pois(j; lambda/2) * P(k/2 + j, x/2).
/// Terms are taken outward from the Poisson mode until the remaining Poisson
/// mass is at most `tol`; the central CDFs are then produced by a downward
/// recurrence from the largest index, which only ever adds positive terms.
/// Throws ConvergenceError when more than `max_terms` terms would be needed.
SeriesResult noncentral_chi_squared_cdf(double dof, double noncentrality, double x,
                                        double tol, std::size_t max_terms = 1'000'000);

}  // namespace esdrift
