#pragma once

#include <cstddef>
#include <span>

namespace esdrift {

/// Two-sided standard normal quantiles used for confidence intervals.
inline constexpr double kZ99 = 2.5758293035489004;

/// Sample mean with a normal-approximation confidence half-width.
struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    double half_width = 0.0;
    std::size_t n = 0;

    double lower() const { return mean - half_width; }
    double upper() const { return mean + half_width; }
};

/// Welford accumulator.
class RunningStats {
public:
    void add(double x) {
        ++n_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (x - mean_);
    }

    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

    MeanEstimate estimate(double z = kZ99) const;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

MeanEstimate mean_estimate(std::span<const double> xs, double z = kZ99);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares of ys on xs. Needs at least two distinct xs.
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

}  // namespace esdrift
