#include "esdrift/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "esdrift/errors.hpp"

namespace esdrift {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

// log(1 + z) - z
double log1pmx(double z) {
    if (std::abs(z) > 0.25) return std::log1p(z) - z;
    double term = z;
    double sum = 0.0;
    for (int k = 2; k < 200; ++k) {
        term *= -z;
        const double add = term / k;
        sum += add;
        if (std::abs(add) <= kEps * std::abs(sum)) break;
    }
    return sum;
}

// lgamma(a + 1) - [(a + 1/2) log a - a + log(2 pi)/2]
double stirling_correction(double a) {
    const double inv = 1.0 / a;
    const double inv2 = inv * inv;
    return inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
}

std::size_t iteration_cap(double a) {
    return 100000 + static_cast<std::size_t>(100.0 * std::sqrt(a));
}

double gamma_p_series(double a, double x) {
    double sum = 1.0;
    double term = 1.0;
    const std::size_t cap = iteration_cap(a);
    for (std::size_t n = 1; n < cap; ++n) {
        term *= x / (a + static_cast<double>(n));
        sum += term;
        if (term < sum * kEps) return std::exp(log_gamma_prefix(a, x)) * sum;
    }
    throw ConvergenceError("regularized_gamma_p: series did not converge", term / sum);
}

double gamma_q_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    const std::size_t cap = iteration_cap(a);
    for (std::size_t i = 1; i < cap; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= kEps) return a * std::exp(log_gamma_prefix(a, x)) * h;
    }
    throw ConvergenceError("regularized_gamma_p: continued fraction did not converge", h);
}

}  // namespace

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double log_gamma_prefix(double a, double x) {
    if (a < 0.0 || x < 0.0) throw DomainError("log_gamma_prefix: negative argument");
    if (x == 0.0) return a == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
    if (a < 10.0) return (a == 0.0 ? 0.0 : a * std::log(x)) - x - std::lgamma(a + 1.0);
    return a * log1pmx((x - a) / a) - 0.5 * std::log(2.0 * std::numbers::pi * a) -
           stirling_correction(a);
}

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0)) throw DomainError("regularized_gamma_p: shape must be positive");
    if (x < 0.0 || std::isnan(x)) throw DomainError("regularized_gamma_p: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_fraction(a, x);
}

double chi_squared_cdf(double dof, double x) {
    if (!(dof > 0.0)) throw DomainError("chi_squared_cdf: dof must be positive");
    if (x <= 0.0) return 0.0;
    return regularized_gamma_p(0.5 * dof, 0.5 * x);
}

SeriesResult noncentral_chi_squared_cdf(double dof, double noncentrality, double x, double tol,
                                        std::size_t max_terms) {
    if (!(dof > 0.0)) throw DomainError("noncentral_chi_squared_cdf: dof must be positive");
    if (noncentrality < 0.0) throw DomainError("noncentral_chi_squared_cdf: noncentrality < 0");
    if (!(tol > 0.0)) throw DomainError("noncentral_chi_squared_cdf: tol must be positive");

    SeriesResult out;
    if (x <= 0.0) return out;
    const double half_dof = 0.5 * dof;
    const double y = 0.5 * x;
    const double mean = 0.5 * noncentrality;
    if (mean == 0.0) {
        out.value = regularized_gamma_p(half_dof, y);
        out.terms = 1;
        return out;
    }

    auto weight = [mean](double j) { return std::exp(log_gamma_prefix(j, mean)); };

    // Grow [lo, hi] around the mode, always taking the heavier neighbour.
    double lo = std::floor(mean);
    double hi = lo;
    double mass = weight(lo);
    double w_below = lo > 0.0 ? weight(lo - 1.0) : 0.0;
    double w_above = weight(hi + 1.0);
    std::size_t terms = 1;
    while (1.0 - mass > tol) {
        if (terms >= max_terms)
            throw ConvergenceError("noncentral_chi_squared_cdf: term cap of " +
                                       std::to_string(max_terms) + " reached",
                                   1.0 - mass);
        if (w_below == 0.0 && w_above == 0.0)
            throw ConvergenceError("noncentral_chi_squared_cdf: tolerance below rounding level",
                                   1.0 - mass);
        if (w_below >= w_above) {
            lo -= 1.0;
            mass += w_below;
            w_below = lo > 0.0 ? weight(lo - 1.0) : 0.0;
        } else {
            hi += 1.0;
            mass += w_above;
            w_above = weight(hi + 1.0);
        }
        ++terms;
    }

    double p = regularized_gamma_p(half_dof + hi, y);
    double sum = weight(hi) * p;
    for (double j = hi - 1.0; j >= lo; j -= 1.0) {
        // P(a, y) = P(a + 1, y) + y^a e^{-y} / Gamma(a + 1)
        p += std::exp(log_gamma_prefix(half_dof + j, y));
        sum += weight(j) * p;
    }
    out.value = std::min(1.0, std::max(0.0, sum));
    out.truncation_bound = std::max(0.0, 1.0 - mass);
    out.terms = terms;
    return out;
}

}  // namespace esdrift
