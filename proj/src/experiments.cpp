#include "esdrift/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fmt/format.h>
#include <ostream>

#include "esdrift/errors.hpp"
#include "esdrift/hit_and_run.hpp"
#include "esdrift/parallel.hpp"
#include "esdrift/rng.hpp"
#include "esdrift/success_prob.hpp"

namespace esdrift {
namespace {

std::string num(double x) { return fmt::format("{:.17g}", x); }
const char* flag(bool b) { return b ? "true" : "false"; }

void schema_line(std::ostream& os) { os << "# schema_version=" << kSchemaVersion << '\n'; }

std::vector<int> powers_of_two(int from, int to) {
    std::vector<int> out;
    for (int d = from; d <= to; d *= 2) out.push_back(d);
    return out;
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return mix64(seed ^ mix64(a ^ mix64(b)));
}

}  // namespace

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& what) { throw ConfigurationError("invalid config: " + what); };
    for (int d : dims)
        if (d < 2) fail(fmt::format("dimension {} < 2", d));
    if (!(alpha > 1.0)) fail("alpha must be > 1");
    if (!(psucc_at_upper > 0.0 && psucc_at_upper < 0.2 && psucc_at_lower > 0.2 &&
          psucc_at_lower < 0.5))
        fail("need 0 < p_u < 1/5 < p_l < 1/2");
    if (!(epsilon > 0.0)) fail("epsilon must be > 0");
    if (!(m0_norm > 0.0)) fail("m0_norm must be > 0");
    if (!(sigma_bar0 > 0.0)) fail("sigma_bar0 must be > 0");
    if (replicates < 1) fail("replicates must be >= 1");
    if (mc_samples < 1000) fail("mc_samples must be >= 1000");
    for (double e : eps_sweep)
        if (!(e > 0.0)) fail("eps_sweep values must be > 0");
    if (sweep_dim < 2) fail("sweep_dim must be >= 2");
    if (grid_points < 1 || curve_points < 2) fail("grid sizes must be positive");
    if (max_iter < 1) fail("max_iter must be >= 1");
}

std::vector<int> ExperimentConfig::dims_or(std::vector<int> fallback) const {
    return dims.empty() ? fallback : dims;
}

// success-curve -------------------------------------------------------------

std::vector<CurveRow> success_curve(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::vector<int> dims = cfg.dims_or(powers_of_two(2, 256));
    const std::vector<double> grid = log_grid(0.1, 10.0, cfg.curve_points);
    std::vector<CurveRow> rows;
    for (double rho : {0.0, 1.0})
        for (int d : dims)
            for (double s : grid) {
                CurveRow r;
                r.rho = rho;
                r.dim = d;
                r.sigma_bar = s;
                r.p_exact = psucc_exact({d, rho / d, s}, 1e-12);
                r.p_limit = psucc_limit(rho, s);
                r.abs_gap = std::abs(r.p_exact - r.p_limit);
                rows.push_back(r);
            }
    return rows;
}

void write_csv(std::ostream& os, std::span<const CurveRow> rows) {
    schema_line(os);
    os << "rho,d,sigma_bar,p_exact,p_limit,abs_gap\n";
    for (const auto& r : rows)
        os << num(r.rho) << ',' << r.dim << ',' << num(r.sigma_bar) << ',' << num(r.p_exact) << ','
           << num(r.p_limit) << ',' << num(r.abs_gap) << '\n';
}

// drift-map -----------------------------------------------------------------

std::vector<DriftMapReportRow> drift_map_report(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<DriftMapReportRow> out;
    for (int d : cfg.dims_or({5, 10})) {
        const DriftConstants c =
            derive_constants(d, cfg.alpha, cfg.psucc_at_upper, cfg.psucc_at_lower);
        const auto grid = log_grid(c.band_lower / 100.0, 100.0 * c.band_upper, cfg.grid_points);
        const auto rows =
            drift_map(c, grid, cfg.mc_samples, sub_seed(cfg.seed, static_cast<std::uint64_t>(d)),
                      cfg.workers);
        for (const auto& row : rows) out.push_back({d, row, c.drift_bound});
    }
    return out;
}

void write_csv(std::ostream& os, std::span<const DriftMapReportRow> rows) {
    schema_line(os);
    os << "d,sigma_bar,regime,drift_mean,ci_halfwidth,bound_B,satisfied\n";
    for (const auto& r : rows)
        os << r.dim << ',' << num(r.row.sigma_bar) << ',' << to_string(r.row.regime) << ','
           << num(r.row.drift.mean) << ',' << num(r.row.drift.half_width) << ',' << num(r.bound)
           << ',' << flag(r.row.satisfied) << '\n';
}

// hitting-scaling -----------------------------------------------------------

HittingTimeReport hitting_time_report(const ExperimentConfig& cfg, int dim, double epsilon) {
    cfg.validate();
    const DriftConstants c =
        derive_constants(dim, cfg.alpha, cfg.psucc_at_upper, cfg.psucc_at_lower);
    const ESState start = ESState::on_axis(dim, cfg.m0_norm, cfg.sigma_bar0);
    const ESParams params{cfg.alpha, dim};
    RunOptions options;
    options.epsilon = epsilon;
    options.max_iter = cfg.max_iter;
    options.record_every = 0;

    const std::uint64_t seed =
        sub_seed(cfg.seed, static_cast<std::uint64_t>(dim), std::bit_cast<std::uint64_t>(epsilon));
    std::vector<std::optional<std::uint64_t>> times(cfg.replicates);
    parallel_for(
        cfg.replicates,
        [&](std::size_t i) {
            RandomStream rng = derive_stream(seed, i);
            times[i] = run_until(start, params, options, rng).hitting_time;
        },
        cfg.workers);

    RunningStats stats;
    HittingTimeReport rep;
    rep.dim = dim;
    rep.epsilon = epsilon;
    for (const auto& t : times) {
        if (t)
            stats.add(static_cast<double>(*t));
        else
            ++rep.censored_runs;
    }
    const MeanEstimate est = stats.estimate(kZ99);
    rep.mean_T = est.mean;
    rep.ci_halfwidth = est.half_width;
    const HittingTimeBounds b = hitting_time_bounds(start, c, epsilon);
    rep.lower_bound = b.lower;
    rep.upper_bound = b.upper;
    rep.within_bounds = rep.censored_runs == 0 && est.n > 0 && b.lower <= est.lower() &&
                        est.upper() <= b.upper;
    return rep;
}

HittingScaling hitting_scaling(const ExperimentConfig& cfg) {
    cfg.validate();
    HittingScaling out;
    std::vector<double> ds, ts, per_dim;
    for (int d : cfg.dims_or(powers_of_two(4, 64))) {
        auto rep = hitting_time_report(cfg, d, cfg.epsilon);
        rep.sweep = "d";
        ds.push_back(d);
        ts.push_back(rep.mean_T);
        per_dim.push_back(rep.mean_T / d);
        out.d_sweep.push_back(rep);
    }
    std::vector<double> log_inv, te;
    for (double eps : cfg.eps_sweep) {
        auto rep = hitting_time_report(cfg, cfg.sweep_dim, eps);
        rep.sweep = "epsilon";
        log_inv.push_back(-std::log(eps));
        te.push_back(rep.mean_T);
        out.eps_sweep.push_back(rep);
    }
    if (ds.size() >= 2) out.fit_vs_dim = linear_fit(ds, ts);
    if (log_inv.size() >= 2) out.fit_vs_log_inv_eps = linear_fit(log_inv, te);
    if (!per_dim.empty()) {
        const auto [lo, hi] = std::minmax_element(per_dim.begin(), per_dim.end());
        out.per_dim_ratio = *hi / *lo;
    }
    return out;
}

void write_csv(std::ostream& os, const HittingScaling& result) {
    schema_line(os);
    os << "sweep,d,epsilon,mean_T,ci_halfwidth,lower_bound,upper_bound,within_bounds,"
          "censored_runs\n";
    auto row = [&os](const HittingTimeReport& r) {
        os << r.sweep << ',' << r.dim << ',' << num(r.epsilon) << ',' << num(r.mean_T) << ','
           << num(r.ci_halfwidth) << ',' << num(r.lower_bound) << ',' << num(r.upper_bound) << ','
           << flag(r.within_bounds) << ',' << r.censored_runs << '\n';
    };
    for (const auto& r : result.d_sweep) row(r);
    for (const auto& r : result.eps_sweep) row(r);
    const auto& fe = result.fit_vs_log_inv_eps;
    const auto& fd = result.fit_vs_dim;
    os << "# fit mean_T ~ log(1/epsilon): slope=" << num(fe.slope)
       << " intercept=" << num(fe.intercept) << " r2=" << num(fe.r_squared) << '\n';
    os << "# fit mean_T ~ d: slope=" << num(fd.slope) << " intercept=" << num(fd.intercept)
       << " r2=" << num(fd.r_squared) << " max_min_ratio_T_over_d=" << num(result.per_dim_ratio)
       << '\n';
}

// bounds --------------------------------------------------------------------

nlohmann::json to_json(const DriftConstants& c) {
    return {
        {"alpha", c.alpha},
        {"p_u", c.psucc_at_upper},
        {"p_l", c.psucc_at_lower},
        {"ell", c.band_lower},
        {"u", c.band_upper},
        {"A", c.truncation},
        {"v", c.penalty_weight},
        {"r", c.rate},
        {"r_prime", c.rate_bound},
        {"p_star", c.band_min_psucc},
        {"p_prime", c.band_min_psucc_bound},
        {"B", c.drift_bound},
        {"L", c.drift_bound_floor},
        {"U", c.drift_bound_ceiling},
    };
}

nlohmann::json bounds_report(const ExperimentConfig& cfg) {
    cfg.validate();
    nlohmann::json out;
    out["schema_version"] = kSchemaVersion;
    out["instance"] = {{"m0_norm", cfg.m0_norm},
                       {"sigma_bar0", cfg.sigma_bar0},
                       {"epsilon", cfg.epsilon}};
    nlohmann::json per_dim = nlohmann::json::array();
    for (int d : cfg.dims_or({10})) {
        const DriftConstants c =
            derive_constants(d, cfg.alpha, cfg.psucc_at_upper, cfg.psucc_at_lower);
        const ESState start = ESState::on_axis(d, cfg.m0_norm, cfg.sigma_bar0);
        const HittingTimeBounds b = hitting_time_bounds(start, c, cfg.epsilon);
        per_dim.push_back({{"d", d},
                           {"constants", to_json(c)},
                           {"potential_0", potential(start, c)},
                           {"hitting_time",
                            {{"lower", b.lower}, {"upper", b.upper}, {"trivial", b.trivial}}}});
    }
    out["dimensions"] = std::move(per_dim);
    return out;
}

// har-check -----------------------------------------------------------------

std::vector<HarCheckRow> har_check(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::vector<int> dims = cfg.dims_or(powers_of_two(2, 128));
    std::vector<HarCheckRow> rows(dims.size());
    parallel_for(
        dims.size(),
        [&](std::size_t i) {
            HarCheckRow& r = rows[i];
            r.dim = dims[i];
            RandomStream rng = derive_stream(sub_seed(cfg.seed, 0x4a52), i);
            r.mc = expected_log_progress_mc(r.dim, cfg.mc_samples, rng);
            r.quadrature = expected_log_progress_quadrature(r.dim);
            r.bound = 1.0 / r.dim;
            r.gap_sigmas = std::abs(r.mc.mean - r.quadrature) / r.mc.std_error;
            r.pass = r.quadrature <= r.bound && r.mc.lower() <= r.bound && r.gap_sigmas < 4.0;
        },
        cfg.workers);
    return rows;
}

void write_csv(std::ostream& os, std::span<const HarCheckRow> rows) {
    schema_line(os);
    os << "d,mc_mean,mc_std_error,quadrature,bound,gap_sigmas,pass\n";
    for (const auto& r : rows)
        os << r.dim << ',' << num(r.mc.mean) << ',' << num(r.mc.std_error) << ','
           << num(r.quadrature) << ',' << num(r.bound) << ',' << num(r.gap_sigmas) << ','
           << flag(r.pass) << '\n';
}

// run -----------------------------------------------------------------------

RunTrace traced_run(const ExperimentConfig& cfg) {
    cfg.validate();
    const int d = cfg.dims_or({10}).front();
    const DriftConstants c =
        derive_constants(d, cfg.alpha, cfg.psucc_at_upper, cfg.psucc_at_lower);
    RunOptions options;
    options.epsilon = cfg.epsilon;
    options.max_iter = cfg.max_iter;
    options.record_every = cfg.record_every;
    options.potential = [c](const ESState& s) { return potential(s, c); };
    options.truncation = c.truncation;
    RandomStream rng = derive_stream(cfg.seed, 0);
    return run_until(ESState::on_axis(d, cfg.m0_norm, cfg.sigma_bar0), ESParams{cfg.alpha, d},
                     options, rng);
}

void write_csv(std::ostream& os, const RunTrace& trace) {
    schema_line(os);
    os << "# hitting_time=" << (trace.hitting_time ? std::to_string(*trace.hitting_time) : "none")
       << '\n';
    os << "t,norm_m,sigma,sigma_bar,success,potential,truncated_delta\n";
    for (const auto& r : trace.records)
        os << r.t << ',' << num(r.norm_m) << ',' << num(r.sigma) << ',' << num(r.sigma_bar) << ','
           << flag(r.success) << ',' << num(r.potential) << ',' << num(r.truncated_delta) << '\n';
}

}  // namespace esdrift
