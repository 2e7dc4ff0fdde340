#include "esdrift/success_prob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "esdrift/errors.hpp"
#include "esdrift/special.hpp"

namespace esdrift {

void SuccessProbQuery::validate() const {
    if (dim < 1) throw DomainError("SuccessProbQuery: dimension must be >= 1");
    if (!(rate >= 0.0 && rate < 1.0)) throw DomainError("SuccessProbQuery: rate must be in [0, 1)");
    if (!(sigma_bar > 0.0) || !std::isfinite(sigma_bar))
        throw DomainError("SuccessProbQuery: sigma_bar must be > 0");
}

ProbEstimate psucc_mc(const SuccessProbQuery& q, std::size_t n, RandomStream& rng) {
    q.validate();
    if (n == 0) throw DomainError("psucc_mc: need at least one sample");
    const double scale = q.sigma_bar / q.dim;
    const double radius_sq = (1.0 - q.rate) * (1.0 - q.rate);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double first = 1.0 + scale * rng.normal();
        double rest = 0.0;
        for (int i = 1; i < q.dim; ++i) {
            const double g = rng.normal();
            rest += g * g;
        }
        if (first * first + scale * scale * rest < radius_sq) ++hits;
    }
    ProbEstimate e;
    e.n_samples = n;
    e.value = static_cast<double>(hits) / static_cast<double>(n);
    e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n));
    return e;
}

double psucc_exact(const SuccessProbQuery& q, double tol) {
    q.validate();
    if (!(tol > 0.0 && tol <= 1e-3)) throw DomainError("psucc_exact: tol must be in (0, 1e-3]");
    const double inv_scale = q.dim / q.sigma_bar;
    const double threshold = (1.0 - q.rate) * inv_scale;
    return noncentral_chi_squared_cdf(q.dim, inv_scale * inv_scale, threshold * threshold, tol)
        .value;
}

double psucc_limit(double rho, double sigma_bar) {
    if (!(sigma_bar > 0.0)) throw DomainError("psucc_limit: sigma_bar must be > 0");
    if (rho < 0.0) throw DomainError("psucc_limit: rho must be >= 0");
    return std_normal_cdf(-rho / sigma_bar - 0.5 * sigma_bar);
}

double psucc0_inverse(int dim, double p, double tol) {
    if (!(p > 0.0 && p < 0.5))
        throw DomainError("psucc0_inverse: p = " + std::to_string(p) +
                          " outside the image (0, 1/2) of the r = 0 success probability");
    if (!(tol > 0.0)) throw DomainError("psucc0_inverse: tol must be > 0");
    const double series_tol = std::min(1e-3, 0.25 * tol);
    auto f = [&](double s) { return psucc_exact({dim, 0.0, s}, series_tol); };

    // p(0+) = 1/2 > p, so the lower end always brackets without evaluating it.
    double lo = 1e-6;
    double hi = 64.0;
    while (f(hi) > p) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw ConvergenceError("psucc0_inverse: no upper bracket found", hi);
    }
    for (int iter = 0; iter < 300; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double value = f(mid);
        if (std::abs(value - p) <= tol) return mid;
        (value > p ? lo : hi) = mid;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
            throw ConvergenceError("psucc0_inverse: bracket collapsed before reaching tol",
                                   std::abs(value - p));
    }
    throw ConvergenceError("psucc0_inverse: bisection iteration cap", hi - lo);
}

}  // namespace esdrift
