#include "esdrift/hit_and_run.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "esdrift/errors.hpp"
#include "esdrift/quadrature.hpp"

namespace esdrift {

double optimal_step_length(std::span<const double> m, std::span<const double> delta) {
    if (m.size() != delta.size()) throw DomainError("optimal_step_length: dimension mismatch");
    double dot = 0.0, dd = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        dot += m[i] * delta[i];
        dd += delta[i] * delta[i];
    }
    if (dd == 0.0) throw DomainError("optimal_step_length: degenerate (zero) direction");
    return -dot / dd;
}

LineSearchStep line_search_step(std::span<const double> m, std::span<const double> delta) {
    const double gamma = optimal_step_length(m, delta);
    LineSearchStep out;
    out.point.resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) out.point[i] = m[i] + gamma * delta[i];
    const double f_before = sphere_eval(m);
    if (f_before == 0.0) throw DomainError("line_search_step: m is the optimum");
    const double f_after = sphere_eval(out.point);
    if (f_after == 0.0) {
        out.capped = true;
        out.log_progress = kCappedLogProgress;
    } else {
        // Rounding can put f_after a hair above f_before for orthogonal directions.
        out.log_progress = std::max(0.0, 0.5 * (std::log(f_before) - std::log(f_after)));
    }
    return out;
}

LineSearchStep har_step(std::span<const double> m, double sigma, RandomStream& rng) {
    if (!(sigma > 0.0)) throw DomainError("har_step: sigma must be > 0");
    Vector delta(m.size());
    rng.fill_normal(delta);
    for (double& x : delta) x *= sigma;
    return line_search_step(m, delta);
}

AngleSample sample_progress_angle(int dim, RandomStream& rng) {
    if (dim < 2) throw DomainError("sample_progress_angle: dimension must be >= 2");
    const double axial = rng.normal();
    double radial_sq = 0.0;
    for (int i = 1; i < dim; ++i) {
        const double g = rng.normal();
        radial_sq += g * g;
    }
    AngleSample s;
    s.angle = std::atan2(std::sqrt(radial_sq), axial);
    if (axial < 0.0) return s;
    if (radial_sq == 0.0) {
        s.capped = true;
        s.log_progress = kCappedLogProgress;
        return s;
    }
    // -log(sin t) = log(1 + cot^2 t) / 2
    s.log_progress = 0.5 * std::log1p(axial * axial / radial_sq);
    return s;
}

MeanEstimate expected_log_progress_mc(int dim, std::size_t n, RandomStream& rng) {
    if (dim < 2) throw DomainError("expected_log_progress_mc: dimension must be >= 2");
    if (n < 1000) throw DomainError("expected_log_progress_mc: need n >= 1000");
    RunningStats stats;
    for (std::size_t k = 0; k < n; ++k) stats.add(sample_progress_angle(dim, rng).log_progress);
    return stats.estimate(kZ99);
}

double wallis_integral(int n) {
    if (n < 0) throw DomainError("wallis_integral: n must be >= 0");
    double even = std::numbers::pi / 2.0;
    double odd = 1.0;
    for (int k = 2; k <= n; ++k) {
        double& w = (k % 2 == 0) ? even : odd;
        w *= static_cast<double>(k - 1) / static_cast<double>(k);
    }
    return n % 2 == 0 ? even : odd;
}

double expected_log_progress_quadrature(int dim, double tol) {
    if (dim < 2) throw DomainError("expected_log_progress_quadrature: dimension must be >= 2");
    const int power = dim - 2;
    const double norm = 2.0 * wallis_integral(power);
    auto integrand = [power](double t) {
        const double s = std::sin(t);
        return -std::log(s) * std::pow(s, power);
    };
    const QuadratureResult r =
        integrate_adaptive(integrand, 0.0, std::numbers::pi / 2.0, tol * norm, 1e-13);
    return r.value / norm;
}

}  // namespace esdrift
