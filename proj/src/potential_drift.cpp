#include "esdrift/potential_drift.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "esdrift/drift_theorems.hpp"
#include "esdrift/errors.hpp"
#include "esdrift/parallel.hpp"
#include "esdrift/success_prob.hpp"

namespace esdrift {
namespace {

constexpr double kSeriesTol = 1e-12;
constexpr double kSlack = 1e-9;

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigurationError("constraint violated: " + what);
}

}  // namespace

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::small_sigma: return "small_sigma";
        case Regime::reasonable_sigma: return "reasonable_sigma";
        case Regime::large_sigma: return "large_sigma";
    }
    return "unknown";
}

Regime classify(double sigma_bar, const DriftConstants& c) {
    if (sigma_bar < c.band_lower) return Regime::small_sigma;
    if (sigma_bar > c.band_upper) return Regime::large_sigma;
    return Regime::reasonable_sigma;
}

void DriftConstants::check() const {
    const double log_alpha = std::log(alpha);
    require(psucc_at_upper > 0.0 && psucc_at_upper < 0.2 && psucc_at_lower > 0.2 &&
                psucc_at_lower < 0.5,
            fmt::format("0 < p_u < 1/5 < p_l < 1/2 (p_u = {}, p_l = {})", psucc_at_upper,
                        psucc_at_lower));
    require(band_upper / band_lower >= std::pow(alpha, 1.25),
            fmt::format("u / ell >= alpha^(5/4) ({:.6g} < {:.6g})", band_upper / band_lower,
                        std::pow(alpha, 1.25)));
    require(penalty_weight > 0.0 &&
                penalty_weight < std::min(1.0, truncation / log_alpha),
            fmt::format("0 < v < min(1, A / log(alpha)) (v = {:.6g}, A / log(alpha) = {:.6g})",
                        penalty_weight, truncation / log_alpha));
    require(rate_bound >= rate, fmt::format("r' >= r (r' = {:.6g}, r = {:.6g})", rate_bound, rate));
    require(drift_bound > 0.0, fmt::format("B > 0 (B = {:.6g})", drift_bound));
    require(drift_bound_floor <= drift_bound * (1.0 + kSlack) &&
                drift_bound <= drift_bound_ceiling * (1.0 + kSlack),
            fmt::format("L <= B <= U (L = {:.6g}, B = {:.6g}, U = {:.6g})", drift_bound_floor,
                        drift_bound, drift_bound_ceiling));
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi >= lo) || count == 0)
        throw DomainError("log_grid: need 0 < lo <= hi and count >= 1");
    std::vector<double> grid(count);
    if (count == 1) {
        grid[0] = lo;
        return grid;
    }
    const double step = std::log(hi / lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
    grid.back() = hi;
    return grid;
}

double minimize_psucc_over_band(int dim, double rate, double lower, double upper, double tol) {
    if (!(lower > 0.0 && lower < upper))
        throw DomainError("minimize_psucc_over_band: need 0 < lower < upper");
    auto f = [&](double s) { return psucc_exact({dim, rate, s}, kSeriesTol); };

    const std::vector<double> grid = log_grid(lower, upper, 256);
    std::vector<double> values(grid.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        values[i] = f(grid[i]);
        if (values[i] < values[best]) best = i;
    }
    double result = values[best];
    if (best == 0 || best + 1 == grid.size()) return result;

    // Golden-section search on the two cells around the best grid point.
    constexpr double kInvPhi = 0.6180339887498949;
    double a = grid[best - 1], b = grid[best + 1];
    double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol * upper) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    return std::min({result, f1, f2});
}

DriftConstants derive_constants(int dim, double alpha, double psucc_at_upper,
                                double psucc_at_lower) {
    if (dim < 2) throw DomainError("derive_constants: dimension must be >= 2");
    if (!(alpha > 1.0)) throw DomainError("derive_constants: alpha must be > 1");

    DriftConstants c;
    c.dim = dim;
    c.alpha = alpha;
    c.psucc_at_upper = psucc_at_upper;
    c.psucc_at_lower = psucc_at_lower;
    require(psucc_at_upper > 0.0 && psucc_at_upper < 0.2 && psucc_at_lower > 0.2 &&
                psucc_at_lower < 0.5,
            fmt::format("0 < p_u < 1/5 < p_l < 1/2 (p_u = {}, p_l = {})", psucc_at_upper,
                        psucc_at_lower));

    c.band_lower = psucc0_inverse(dim, psucc_at_lower, 1e-12);
    c.band_upper = psucc0_inverse(dim, psucc_at_upper, 1e-12);
    require(c.band_upper / c.band_lower >= std::pow(alpha, 1.25),
            fmt::format("u / ell >= alpha^(5/4) ({:.6g} < {:.6g} for alpha = {})",
                        c.band_upper / c.band_lower, std::pow(alpha, 1.25), alpha));

    const double d = dim;
    const double log_alpha = std::log(alpha);
    c.truncation = 1.0 / d;
    if (d * log_alpha > 1.0) {
        c.rate_bound = 1.0 - std::exp(-log_alpha / (d * log_alpha - 1.0));
    } else {
        const double weight_cap = psucc_at_upper / (2.0 * d * log_alpha);
        c.rate_bound = 1.0 - std::exp(-c.truncation / (1.0 - weight_cap));
    }
    c.band_min_psucc_bound =
        minimize_psucc_over_band(dim, c.rate_bound, c.band_lower, c.band_upper);
    c.penalty_weight = c.band_min_psucc_bound / (2.0 * d * log_alpha);
    c.rate = 1.0 - std::exp(-c.truncation / (1.0 - c.penalty_weight));
    c.band_min_psucc = minimize_psucc_over_band(dim, c.rate, c.band_lower, c.band_upper);

    const double vla = c.penalty_weight * log_alpha;
    const double small_term = vla * (5.0 * psucc_at_lower - 1.0) / 4.0;
    const double large_term = vla * (1.0 - 5.0 * psucc_at_upper) / 4.0;
    c.drift_bound = std::min({c.truncation * c.band_min_psucc - 1.25 * vla, small_term, large_term});

    const double lo_coeff = std::min({3.0 / 8.0, (5.0 * psucc_at_lower - 1.0) / 8.0,
                                      (1.0 - 5.0 * psucc_at_upper) / 8.0});
    const double hi_coeff = std::max({3.0 / 8.0, (5.0 * psucc_at_lower - 1.0) / 8.0,
                                      (1.0 - 5.0 * psucc_at_upper) / 8.0});
    c.drift_bound_floor = c.band_min_psucc_bound / d * lo_coeff;
    c.drift_bound_ceiling = c.band_min_psucc / d * hi_coeff;

    c.check();
    return c;
}

double potential_excess(double sigma_bar, const DriftConstants& c) {
    const double log_s = std::log(sigma_bar);
    const double too_small = c.penalty_weight * (std::log(c.alpha * c.band_lower) - log_s);
    const double too_large =
        c.penalty_weight * (0.25 * std::log(c.alpha) + log_s - std::log(c.band_upper));
    return std::max({0.0, too_small, too_large});
}

double potential(const ESState& state, const DriftConstants& c) {
    const double norm = euclidean_norm(state.mean);
    if (norm == 0.0) throw DomainError("potential: undefined at the optimum");
    return std::log(norm) + potential_excess(state.dim() * state.sigma / norm, c);
}

double truncated_delta(double v_now, double v_next, double truncation) {
    if (!(truncation > 0.0)) throw DomainError("truncated_delta: A must be > 0");
    return std::max(v_next - v_now, -truncation);
}

double regime_drift_bound(Regime regime, const DriftConstants& c) {
    const double vla = c.penalty_weight * std::log(c.alpha);
    switch (regime) {
        case Regime::small_sigma: return -vla * (5.0 * c.psucc_at_lower - 1.0) / 4.0;
        case Regime::large_sigma: return -vla * (1.0 - 5.0 * c.psucc_at_upper) / 4.0;
        case Regime::reasonable_sigma: return -c.truncation * c.band_min_psucc + 1.25 * vla;
    }
    return 0.0;
}

MeanEstimate estimate_truncated_drift(const ESState& state, const DriftConstants& c,
                                      std::size_t n, RandomStream& rng) {
    if (n < 1000) throw DomainError("estimate_truncated_drift: need n >= 1000");
    state.validate();
    const double norm = euclidean_norm(state.mean);
    if (norm == 0.0) throw DomainError("estimate_truncated_drift: state is at the optimum");
    const double d = state.dim();
    const double v_now = potential(state, c);
    const double sigma_up = state.sigma * c.alpha;
    const double sigma_down = state.sigma * std::pow(c.alpha, -0.25);
    const double f_parent = norm * norm;

    RunningStats stats;
    std::vector<double> z(state.mean.size());
    for (std::size_t k = 0; k < n; ++k) {
        rng.fill_normal(z);
        double f_child = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            const double xi = state.mean[i] + state.sigma * z[i];
            f_child += xi * xi;
        }
        double v_next;
        if (f_child <= f_parent) {
            const double child_norm = std::sqrt(f_child);
            v_next = std::log(child_norm) + potential_excess(d * sigma_up / child_norm, c);
        } else {
            v_next = std::log(norm) + potential_excess(d * sigma_down / norm, c);
        }
        stats.add(truncated_delta(v_now, v_next, c.truncation));
    }
    return stats.estimate(kZ99);
}

std::vector<DriftMapRow> drift_map(const DriftConstants& c, std::span<const double> sigma_bar_grid,
                                   std::size_t n, std::uint64_t seed, unsigned workers) {
    if (sigma_bar_grid.empty()) throw DomainError("drift_map: empty grid");
    std::vector<DriftMapRow> rows(sigma_bar_grid.size());
    parallel_for(
        rows.size(),
        [&](std::size_t i) {
            RandomStream rng = derive_stream(seed, i);
            DriftMapRow& row = rows[i];
            row.sigma_bar = sigma_bar_grid[i];
            row.regime = classify(row.sigma_bar, c);
            const ESState state = ESState::on_axis(c.dim, 1.0, row.sigma_bar);
            row.drift = estimate_truncated_drift(state, c, n, rng);
            row.satisfied = row.drift.upper() <= -c.drift_bound;
        },
        workers);
    return rows;
}

HittingTimeBounds hitting_time_bounds(const ESState& state0, const DriftConstants& c,
                                      double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("hitting_time_bounds: epsilon must be > 0");
    const double norm = euclidean_norm(state0.mean);
    const double x0 = std::log(norm);
    const double beta = std::log(epsilon);
    HittingTimeBounds b;
    b.lower = monotone_drift_lower_bound(x0, beta, 1.0 / state0.dim());
    if (epsilon >= norm) {
        b.trivial = true;
        b.upper = 0.0;
        return b;
    }
    b.upper = truncated_drift_upper_bound(potential(state0, c), beta, c.truncation, c.drift_bound);
    return b;
}

}  // namespace esdrift
