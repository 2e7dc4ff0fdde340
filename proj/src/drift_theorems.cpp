#include "esdrift/drift_theorems.hpp"

#include <algorithm>

#include "esdrift/errors.hpp"

namespace esdrift {

TruncatedSeries truncate_series(std::span<const double> xs, double truncation) {
    if (xs.empty()) throw DomainError("truncate_series: empty series");
    if (!(truncation > 0.0)) throw DomainError("truncate_series: truncation must be > 0");
    TruncatedSeries out;
    out.truncation = truncation;
    out.xs.assign(xs.begin(), xs.end());
    out.ys.resize(xs.size());
    out.ys[0] = xs[0];
    for (std::size_t t = 1; t < xs.size(); ++t)
        out.ys[t] = out.ys[t - 1] + std::max(xs[t] - xs[t - 1], -truncation);
    return out;
}

std::optional<std::size_t> first_hitting_time(std::span<const double> series, double threshold) {
    const auto it = std::find_if(series.begin(), series.end(),
                                 [threshold](double x) { return x <= threshold; });
    if (it == series.end()) return std::nullopt;
    return static_cast<std::size_t>(it - series.begin());
}

double truncated_drift_upper_bound(double x0, double beta, double truncation, double drift) {
    if (!(truncation > 0.0)) throw DomainError("truncated_drift_upper_bound: A must be > 0");
    if (!(drift > 0.0)) throw DomainError("truncated_drift_upper_bound: B must be > 0");
    if (beta >= x0) return 0.0;
    return (x0 - beta + truncation) / drift;
}

double monotone_drift_lower_bound(double x0, double beta, double max_drift) {
    if (!(max_drift > 0.0)) throw DomainError("monotone_drift_lower_bound: C must be > 0");
    return (x0 - beta) / (4.0 * max_drift) - 0.5;
}

HittingSample simulate_jump_process(double p, double x0, double beta, RandomStream& rng,
                                    std::uint64_t horizon) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("simulate_jump_process: p must be in (0, 1]");
    const double jump = 1.0 / p;
    double x = x0;
    HittingSample s;
    while (x > beta) {
        if (s.time >= horizon) {
            s.censored = true;
            return s;
        }
        ++s.time;
        if (rng.bernoulli(p)) x -= jump;
    }
    return s;
}

HittingSample simulate_additive_walk(double step, double noise, double x0, double beta,
                                     RandomStream& rng, std::uint64_t horizon) {
    if (!(step > 0.0) || noise < 0.0)
        throw DomainError("simulate_additive_walk: need step > 0 and noise >= 0");
    double x = x0;
    HittingSample s;
    while (x > beta) {
        if (s.time >= horizon) {
            s.censored = true;
            return s;
        }
        ++s.time;
        x += -step + noise * (2.0 * rng.uniform() - 1.0);
    }
    return s;
}

HittingTimeSummary summarize_hitting_times(std::span<const HittingSample> samples) {
    RunningStats stats;
    HittingTimeSummary out;
    for (const auto& s : samples) {
        if (s.censored)
            ++out.censored;
        else
            stats.add(static_cast<double>(s.time));
    }
    out.time = stats.estimate();
    return out;
}

}  // namespace esdrift
