#include "esdrift/stats.hpp"

#include <cmath>

#include "esdrift/errors.hpp"

namespace esdrift {

MeanEstimate RunningStats::estimate(double z) const {
    MeanEstimate e;
    e.n = n_;
    e.mean = mean_;
    e.std_error = n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
    e.half_width = z * e.std_error;
    return e;
}

MeanEstimate mean_estimate(std::span<const double> xs, double z) {
    RunningStats s;
    for (double x : xs) s.add(x);
    return s.estimate(z);
}

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw DomainError("linear_fit: need at least two paired points");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw DomainError("linear_fit: xs are all equal");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace esdrift
