#include "esdrift/es_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "esdrift/errors.hpp"

namespace esdrift {

double sphere_eval(std::span<const double> x) {
    if (x.empty()) throw DomainError("sphere_eval: empty vector");
    double sum = 0.0;
    for (double xi : x) sum += xi * xi;
    return sum;
}

double euclidean_norm(std::span<const double> x) { return std::sqrt(sphere_eval(x)); }

void ESParams::validate() const {
    if (!(alpha > 1.0)) throw DomainError("ESParams: alpha must be > 1");
    if (dim < 2) throw DomainError("ESParams: dimension must be >= 2");
}

void ESState::validate() const {
    if (mean.size() < 2) throw DomainError("ESState: dimension must be >= 2");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("ESState: sigma must be > 0");
}

ESState ESState::on_axis(int dim, double norm, double sigma_bar) {
    if (dim < 1 || !(norm > 0.0) || !(sigma_bar > 0.0))
        throw DomainError("ESState::on_axis: need dim >= 1, norm > 0, sigma_bar > 0");
    ESState s;
    s.mean.assign(static_cast<std::size_t>(dim), 0.0);
    s.mean[0] = norm;
    s.sigma = sigma_bar * norm / dim;
    return s;
}

double normalized_step_size(const ESState& state) {
    const double norm = euclidean_norm(state.mean);
    if (norm == 0.0) throw DomainError("normalized_step_size: mean is at the optimum");
    return state.dim() * state.sigma / norm;
}

StepOutcome es_step(ESState& state, const ESParams& params, std::span<const double> z) {
    if (z.size() != state.mean.size()) throw DomainError("es_step: direction has wrong dimension");
    const double f_parent = sphere_eval(state.mean);
    double f_child = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double xi = state.mean[i] + state.sigma * z[i];
        f_child += xi * xi;
    }
    StepOutcome out;
    out.offspring_norm = std::sqrt(f_child);
    out.success = f_child <= f_parent;
    if (out.success) {
        for (std::size_t i = 0; i < z.size(); ++i) state.mean[i] += state.sigma * z[i];
        state.sigma *= params.alpha;
        out.log_progress = 0.5 * (std::log(f_parent) - std::log(f_child));
    } else {
        state.sigma *= std::pow(params.alpha, -0.25);
    }
    ++state.t;
    return out;
}

StepOutcome es_step(ESState& state, const ESParams& params, RandomStream& rng) {
    thread_local Vector z;
    z.resize(state.mean.size());
    rng.fill_normal(z);
    return es_step(state, params, z);
}

namespace {

TraceRecord make_record(const ESState& s, bool success, double potential, double delta) {
    TraceRecord r;
    r.t = s.t;
    r.norm_m = euclidean_norm(s.mean);
    r.sigma = s.sigma;
    r.sigma_bar = r.norm_m > 0.0 ? s.dim() * s.sigma / r.norm_m
                                 : std::numeric_limits<double>::infinity();
    r.success = success;
    r.potential = potential;
    r.truncated_delta = delta;
    return r;
}

}  // namespace

RunTrace run_until(ESState state, const ESParams& params, const RunOptions& options,
                   RandomStream& rng) {
    params.validate();
    state.validate();
    if (!(options.epsilon > 0.0)) throw DomainError("run_until: epsilon must be > 0");
    if (options.max_iter == 0) throw DomainError("run_until: max_iter must be > 0");
    if (static_cast<int>(state.mean.size()) != params.dim)
        throw DomainError("run_until: state dimension differs from params.dim");

    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
    const bool track_potential = static_cast<bool>(options.potential);
    if (track_potential && !(options.truncation > 0.0))
        throw DomainError("run_until: truncation A must be > 0 when tracking the potential");

    RunTrace trace;
    double v_prev = track_potential ? options.potential(state) : kNaN;
    trace.records.push_back(make_record(state, false, v_prev, kNaN));

    const std::uint64_t t0 = state.t;
    double norm = euclidean_norm(state.mean);
    Vector z(state.mean.size());
    while (norm > options.epsilon && state.t - t0 < options.max_iter) {
        rng.fill_normal(z);
        const StepOutcome step = es_step(state, params, z);
        if (step.success) {
            ++trace.successes;
            norm = euclidean_norm(state.mean);
        } else {
            ++trace.failures;
        }
        double v_now = kNaN, delta = kNaN;
        if (track_potential && norm > 0.0) {
            v_now = options.potential(state);
            delta = std::max(v_now - v_prev, -options.truncation);
            v_prev = v_now;
        }
        const bool done = norm <= options.epsilon || state.t - t0 >= options.max_iter;
        const bool due = options.record_every > 0 && (state.t - t0) % options.record_every == 0;
        if (due || done) trace.records.push_back(make_record(state, step.success, v_now, delta));
    }
    if (norm <= options.epsilon) trace.hitting_time = state.t - t0;
    trace.final_state = std::move(state);
    return trace;
}

}  // namespace esdrift
