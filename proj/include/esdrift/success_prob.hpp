#pragma once

#include <cstddef>

#include "esdrift/rng.hpp"

namespace esdrift {

/// Identifies p^succ_{r,d}(sigma_bar) = Pr(||e_1 + (sigma_bar/d) N|| < 1 - r).
struct SuccessProbQuery {
    int dim = 2;
    double rate = 0.0;       ///< improvement rate r in [0, 1)
    double sigma_bar = 1.0;  ///< normalized step size d * sigma / ||m||

    void validate() const;
};

struct ProbEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
};

/// Fraction of n Gaussian samples landing in the success ball.
ProbEstimate psucc_mc(const SuccessProbQuery& q, std::size_t n, RandomStream& rng);

/// Success probability to absolute tolerance `tol` (in (0, 1e-3]).
///
/// (d/sigma_bar)^2 ||e_1 + (sigma_bar/d) N||^2 is noncentral chi-squared with
/// d degrees of freedom and noncentrality (d/sigma_bar)^2, so this is its CDF
/// at ((1-r) d / sigma_bar)^2. Throws ConvergenceError when the Poisson series
/// needs more than 1e6 terms (very small sigma_bar relative to d).
double psucc_exact(const SuccessProbQuery& q, double tol = 1e-10);

/// Large-dimension limit with r * d -> rho: Phi(-rho/sigma_bar - sigma_bar/2).
double psucc_limit(double rho, double sigma_bar);

/// sigma_bar with |p^succ_{0,d}(sigma_bar) - p| <= tol, by bisection on the
/// strictly decreasing r = 0 curve. p must lie in (0, 1/2).
double psucc0_inverse(int dim, double p, double tol = 1e-10);

}  // namespace esdrift
