#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "esdrift/errors.hpp"
#include "esdrift/potential_drift.hpp"
#include "esdrift/success_prob.hpp"

using namespace esdrift;

namespace {

const DriftConstants& constants_d10() {
    static const DriftConstants c = derive_constants(10, 1.5, 0.1, 0.3);
    return c;
}

}  // namespace

TEST_CASE("derive_constants d = 10 against the SciPy pipeline") {
    // tests/oracles/frozen_values.py (ncx2 + brentq + bounded minimisation)
    const DriftConstants& c = constants_d10();
    CHECK(c.band_lower == doctest::Approx(1.1628761340468552).epsilon(1e-9));
    CHECK(c.band_upper == doctest::Approx(2.8255849486910223).epsilon(1e-9));
    CHECK(c.truncation == doctest::Approx(0.1));
    CHECK(c.rate_bound == doctest::Approx(0.12430459805757654).epsilon(1e-12));
    CHECK(c.band_min_psucc_bound == doctest::Approx(0.03500891569285275).epsilon(1e-7));
    CHECK(c.penalty_weight == doctest::Approx(0.004317130499366366).epsilon(1e-7));
    CHECK(c.rate == doctest::Approx(0.09555482075811705).epsilon(1e-7));
    CHECK(c.band_min_psucc == doctest::Approx(0.04574073029735538).epsilon(1e-7));
    CHECK(c.drift_bound == doctest::Approx(0.00021880572308032964).epsilon(1e-7));
    CHECK(c.drift_bound > 0.0);
    CHECK(c.drift_bound_floor <= c.drift_bound * (1 + 1e-12));
    CHECK(c.drift_bound <= c.drift_bound_ceiling);
    CHECK(c.band_upper / c.band_lower >= std::pow(1.5, 1.25));
    CHECK(c.penalty_weight < std::min(1.0, c.truncation / std::log(1.5)));
}

TEST_CASE("derive_constants: band minima cross-checked by Monte Carlo") {
    const DriftConstants& c = constants_d10();
    RandomStream rng = derive_stream(2024, 0);
    // Both minima sit at a band edge for these rates; check the smaller edge value.
    for (double rate : {c.rate_bound, c.rate}) {
        const double target = rate == c.rate ? c.band_min_psucc : c.band_min_psucc_bound;
        const ProbEstimate lo = psucc_mc({10, rate, c.band_lower}, 1'000'000, rng);
        const ProbEstimate hi = psucc_mc({10, rate, c.band_upper}, 1'000'000, rng);
        const ProbEstimate& m = lo.value < hi.value ? lo : hi;
        CHECK(std::abs(m.value - target) <= 4.0 * m.std_error);
    }
}

TEST_CASE("derive_constants d = 2 uses the bounded-weight rate") {
    const DriftConstants c = derive_constants(2, 1.5, 0.1, 0.3);
    CHECK(c.rate_bound == doctest::Approx(0.4130728215078464).epsilon(1e-12));
    CHECK(c.band_min_psucc_bound == doctest::Approx(0.03563507293102739).epsilon(1e-7));
    CHECK(c.band_min_psucc == doctest::Approx(0.03718045479752786).epsilon(1e-7));
    CHECK(c.drift_bound == doctest::Approx(0.001113596029094606).epsilon(1e-7));
    CHECK(c.rate_bound >= c.rate);
}

TEST_CASE("derive_constants rejects alpha too large for the band") {
    try {
        derive_constants(64, 3.0, 0.1, 0.3);
        FAIL("expected ConfigurationError");
    } catch (const ConfigurationError& e) {
        CHECK(std::string(e.what()).find("u / ell >= alpha^(5/4)") != std::string::npos);
    }
    CHECK_THROWS_AS(derive_constants(10, 1.5, 0.25, 0.3), ConfigurationError);
    CHECK_THROWS_AS(derive_constants(10, 1.5, 0.1, 0.15), ConfigurationError);
    CHECK_THROWS_AS(derive_constants(1, 1.5), DomainError);
    CHECK_THROWS_AS(derive_constants(10, 1.0), DomainError);
}

TEST_CASE("d * B stays within a bounded band as d doubles") {
    double lo = 1e300, hi = 0.0;
    for (int d = 4; d <= 128; d *= 2) {
        const DriftConstants c = derive_constants(d, 1.5, 0.1, 0.3);
        CHECK(d * c.drift_bound > 1e-4);
        CHECK(d * c.drift_bound < 1e-2);
        if (d == 4) continue;  // d = 4 sits well below the plateau
        lo = std::min(lo, d * c.drift_bound);
        hi = std::max(hi, d * c.drift_bound);
    }
    CHECK(hi / lo < 3.0);
}

TEST_CASE("minimize_psucc_over_band") {
    SUBCASE("r = 0 attains the minimum at the upper edge") {
        const double m = minimize_psucc_over_band(16, 0.0, 1.1, 2.7);
        CHECK(m == doctest::Approx(psucc_exact({16, 0.0, 2.7}, 1e-12)).epsilon(1e-12));
    }
    SUBCASE("large d with r = 1/d follows the unimodal limit: min at an edge") {
        const int d = 1024;
        const double lo = 1.0, hi = 2.6;
        const double limit_min = std::min(psucc_limit(1.0, lo), psucc_limit(1.0, hi));
        CHECK(psucc_limit(1.0, std::sqrt(2.0)) > limit_min);
        CHECK(std::abs(minimize_psucc_over_band(d, 1.0 / d, lo, hi) - limit_min) < 5e-3);
    }
    SUBCASE("result is below every grid value") {
        const double m = minimize_psucc_over_band(6, 0.15, 0.8, 3.0);
        for (double s : log_grid(0.8, 3.0, 41)) CHECK(m <= psucc_exact({6, 0.15, s}, 1e-12) + 1e-12);
    }
}

TEST_CASE("potential") {
    const DriftConstants& c = constants_d10();
    SUBCASE("inside the neutral band the penalty vanishes") {
        const ESState s = ESState::on_axis(10, 1.0, 2.0);
        CHECK(potential(s, c) == 0.0);
        CHECK(c.alpha * c.band_lower < 2.0);
        CHECK(std::pow(c.alpha, -0.25) * c.band_upper > 2.0);
    }
    SUBCASE("lower edge of the band") {
        const ESState s = ESState::on_axis(10, 3.0, c.alpha * c.band_lower);
        CHECK(potential(s, c) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    }
    SUBCASE("V >= log||m|| and zero excess exactly on [alpha ell, alpha^{-1/4} u]") {
        std::mt19937_64 gen(17);
        std::uniform_real_distribution<double> logu(-6.0, 4.0);
        const double band_lo = c.alpha * c.band_lower;
        const double band_hi = std::pow(c.alpha, -0.25) * c.band_upper;
        for (int i = 0; i < 2000; ++i) {
            const double norm = std::exp(logu(gen));
            const double sb = std::exp(0.5 * logu(gen));
            const ESState s = ESState::on_axis(10, norm, sb);
            const double excess = potential(s, c) - std::log(norm);
            CHECK(excess >= -1e-15);
            if (sb > band_lo * (1 + 1e-12) && sb < band_hi * (1 - 1e-12)) CHECK(excess == 0.0);
            if (sb < band_lo * (1 - 1e-9) || sb > band_hi * (1 + 1e-9)) CHECK(excess > 0.0);
        }
    }
    SUBCASE("pole at the optimum") {
        ESState s{Vector(10, 0.0), 1.0, 0};
        CHECK_THROWS_AS(potential(s, c), DomainError);
    }
}

TEST_CASE("truncated_delta") {
    CHECK(truncated_delta(0.0, -5.0, 1.0) == -1.0);
    CHECK(truncated_delta(0.0, 0.3, 1.0) == doctest::Approx(0.3));
    std::mt19937_64 gen(4);
    std::normal_distribution<double> g(0.0, 3.0);
    for (int i = 0; i < 1000; ++i) CHECK(truncated_delta(g(gen), g(gen), 0.7) >= -0.7);
    CHECK_THROWS_AS(truncated_delta(0.0, 1.0, 0.0), DomainError);
}

TEST_CASE("regime classification switches exactly at ell and u") {
    const DriftConstants& c = constants_d10();
    CHECK(classify(std::nextafter(c.band_lower, 0.0), c) == Regime::small_sigma);
    CHECK(classify(c.band_lower, c) == Regime::reasonable_sigma);
    CHECK(classify(c.band_upper, c) == Regime::reasonable_sigma);
    CHECK(classify(std::nextafter(c.band_upper, 10.0), c) == Regime::large_sigma);
    CHECK(to_string(Regime::large_sigma) == "large_sigma");
}

TEST_CASE("estimate_truncated_drift in the three regimes (d = 10)") {
    const DriftConstants& c = constants_d10();
    const double vla = c.penalty_weight * std::log(c.alpha);
    SUBCASE("reasonable") {
        RandomStream rng = derive_stream(77, 0);
        const MeanEstimate e = estimate_truncated_drift(ESState::on_axis(10, 1.0, 2.0), c, 1'000'000, rng);
        CHECK(e.upper() <= -c.drift_bound);
    }
    SUBCASE("small sigma") {
        RandomStream rng = derive_stream(77, 1);
        const MeanEstimate e =
            estimate_truncated_drift(ESState::on_axis(10, 1.0, c.band_lower / 10.0), c, 1'000'000, rng);
        CHECK(e.mean <= -vla * (5.0 * c.psucc_at_lower - 1.0) / 4.0 + e.half_width);
    }
    SUBCASE("large sigma") {
        RandomStream rng = derive_stream(77, 2);
        const MeanEstimate e =
            estimate_truncated_drift(ESState::on_axis(10, 1.0, 10.0 * c.band_upper), c, 1'000'000, rng);
        CHECK(e.mean <= -vla * (1.0 - 5.0 * c.psucc_at_upper) / 4.0 + e.half_width);
    }
    SUBCASE("deep in the small regime the drift approaches the step-size term") {
        const double sb = c.band_lower / 1000.0;
        const double p = psucc_exact({10, 0.0, sb}, 1e-10);
        CHECK(p == doctest::Approx(0.5).epsilon(1e-3));
        RandomStream rng = derive_stream(77, 3);
        const MeanEstimate e = estimate_truncated_drift(ESState::on_axis(10, 1.0, sb), c, 200'000, rng);
        const double closed = -vla * (5.0 * p - 1.0) / 4.0;
        // remaining gap is the (negative) log progress, of order sigma_bar / d
        CHECK(e.mean <= closed + e.half_width);
        CHECK(e.mean >= closed - sb / 10.0 - e.half_width);
    }
    SUBCASE("n must be at least 1000") {
        RandomStream rng = derive_stream(77, 4);
        CHECK_THROWS_AS(estimate_truncated_drift(ESState::on_axis(10, 1.0, 2.0), c, 999, rng), DomainError);
    }
}

TEST_CASE("drift_map is deterministic and independent of worker count") {
    const DriftConstants& c = constants_d10();
    const auto grid = log_grid(c.band_lower / 100.0, 100.0 * c.band_upper, 6);
    const auto one = drift_map(c, grid, 5000, 123, 1);
    const auto many = drift_map(c, grid, 5000, 123, 4);
    REQUIRE(one.size() == grid.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].drift.mean == many[i].drift.mean);
        CHECK(one[i].regime == classify(grid[i], c));
    }
    CHECK_THROWS_AS(drift_map(c, std::vector<double>{}, 5000, 1), DomainError);
}

TEST_CASE("hitting_time_bounds") {
    const DriftConstants& c = constants_d10();
    const ESState start = ESState::on_axis(10, 1.0, 2.0);
    const HittingTimeBounds b = hitting_time_bounds(start, c, std::exp(-10.0));
    CHECK(b.lower == doctest::Approx(24.5));
    CHECK(b.upper == doctest::Approx((0.0 + 10.0 + 0.1) / c.drift_bound));
    CHECK_FALSE(b.trivial);

    const HittingTimeBounds same = hitting_time_bounds(start, c, 1.0);
    CHECK(same.lower == doctest::Approx(-0.5));
    CHECK(same.trivial);

    for (int d : {2, 4, 16}) {
        const DriftConstants cd = derive_constants(d, 1.5);
        for (double sb : {0.01, 1.0, 2.0, 50.0})
            for (double eps : {1e-1, 1e-4, 1e-12}) {
                const HittingTimeBounds hb = hitting_time_bounds(ESState::on_axis(d, 1.0, sb), cd, eps);
                CHECK(hb.upper >= hb.lower);
            }
    }
}
