#pragma once

#include <cstddef>
#include <functional>

namespace esdrift {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration on [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol * |value|). Only interior nodes
/// are evaluated, so integrable endpoint singularities such as log(x) at 0
/// are handled by repeated splitting. Throws ConvergenceError (carrying the
/// achieved error estimate) after `max_intervals` subintervals.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol = 1e-12,
                                    std::size_t max_intervals = 5000);

}  // namespace esdrift
