#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "esdrift/potential_drift.hpp"
#include "esdrift/stats.hpp"

namespace esdrift {

inline constexpr int kSchemaVersion = 1;

/// Declarative description of an experiment. An empty `dims` means "use the
/// command's default dimension list".
struct ExperimentConfig {
    std::vector<int> dims;
    double alpha = 1.5;
    double psucc_at_upper = 0.1;
    double psucc_at_lower = 0.3;
    double epsilon = 1e-8;
    double m0_norm = 1.0;
    double sigma_bar0 = 2.0;
    std::size_t replicates = 100;
    std::uint64_t seed = 1;
    std::size_t mc_samples = 1'000'000;
    std::vector<double> eps_sweep = {1e-2, 1e-4, 1e-6, 1e-8};
    int sweep_dim = 10;
    std::size_t grid_points = 32;
    std::size_t curve_points = 64;
    std::uint64_t max_iter = 10'000'000;
    std::uint64_t record_every = 1;
    unsigned workers = 0;

    /// Throws ConfigurationError for non-positive or inconsistent fields.
    void validate() const;

    std::vector<int> dims_or(std::vector<int> fallback) const;
};

// success-curve -------------------------------------------------------------

struct CurveRow {
    double rho = 0.0;
    int dim = 0;
    double sigma_bar = 0.0;
    double p_exact = 0.0;
    double p_limit = 0.0;
    double abs_gap = 0.0;
};

/// rho in {0, 1}, d in dims (default 2, 4, ..., 256), sigma_bar on a log grid
/// over [0.1, 10] with `curve_points` points; r = rho / d.
std::vector<CurveRow> success_curve(const ExperimentConfig& cfg);
void write_csv(std::ostream& os, std::span<const CurveRow> rows);

// drift-map -----------------------------------------------------------------

struct DriftMapReportRow {
    int dim = 0;
    DriftMapRow row;
    double bound = 0.0;  ///< B
};

/// Per d (default 5, 10): `grid_points` log-spaced sigma_bar over
/// [ell/100, 100u], `mc_samples` transitions per point.
std::vector<DriftMapReportRow> drift_map_report(const ExperimentConfig& cfg);
void write_csv(std::ostream& os, std::span<const DriftMapReportRow> rows);

// hitting-scaling -----------------------------------------------------------

struct HittingTimeReport {
    std::string sweep;  ///< "d" or "epsilon"
    int dim = 0;
    double epsilon = 0.0;
    double mean_T = 0.0;
    double ci_halfwidth = 0.0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    bool within_bounds = false;  ///< [mean - ci, mean + ci] inside [lower, upper]
    std::size_t censored_runs = 0;
};

/// `replicates` seeded runs from ||m_0|| = m0_norm, sigma_bar_0 = sigma_bar0.
HittingTimeReport hitting_time_report(const ExperimentConfig& cfg, int dim, double epsilon);

struct HittingScaling {
    std::vector<HittingTimeReport> d_sweep;    ///< dims (default 4..64) at cfg.epsilon
    std::vector<HittingTimeReport> eps_sweep;  ///< eps_sweep at sweep_dim
    LinearFit fit_vs_log_inv_eps;
    LinearFit fit_vs_dim;
    double per_dim_ratio = 0.0;  ///< max/min of mean_T / d over the d sweep
};

HittingScaling hitting_scaling(const ExperimentConfig& cfg);
void write_csv(std::ostream& os, const HittingScaling& result);

// bounds --------------------------------------------------------------------

nlohmann::json to_json(const DriftConstants& c);

/// Constants and hitting-time bounds per d (default 10).
nlohmann::json bounds_report(const ExperimentConfig& cfg);

// har-check -----------------------------------------------------------------

struct HarCheckRow {
    int dim = 0;
    MeanEstimate mc;
    double quadrature = 0.0;
    double bound = 0.0;       ///< 1/d
    double gap_sigmas = 0.0;  ///< |mc - quadrature| / mc.std_error
    bool pass = false;        ///< quadrature <= 1/d, mc - hw <= 1/d, gap < 4 sigma
};

/// d in dims (default 2, 4, ..., 128), `mc_samples` draws each.
std::vector<HarCheckRow> har_check(const ExperimentConfig& cfg);
void write_csv(std::ostream& os, std::span<const HarCheckRow> rows);

// run -----------------------------------------------------------------------

/// One traced run at the first of dims (default 10), potential included.
RunTrace traced_run(const ExperimentConfig& cfg);
void write_csv(std::ostream& os, const RunTrace& trace);

}  // namespace esdrift
