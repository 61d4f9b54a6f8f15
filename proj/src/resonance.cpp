#include "burgerlab/resonance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "burgerlab/analysis.hpp"

namespace burgerlab {

double critical_frequency(const ForcingSpec& spec) { return critical_momentum(spec); }

std::pair<double, double> resonance_window(const ForcingSpec& spec, double p) {
    const double w = critical_frequency(spec);
    return {p - w, p + w};
}

TravelingWave build_traveling_wave(double p, double omega, const ForcingSpec& spec,
                                   const TorusGrid& grid, std::optional<double> x0) {
    ForcingSpec steady = spec;
    steady.omega = 0.0;
    TravelingWave wave;
    wave.p = p;
    wave.omega = omega;
    const double p_eff = p - omega;
    wave.cell = solve_cell_problem(p_eff, steady, grid, x0);
    std::vector<double> g(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double v = potential_eval(steady, grid.center(j));
        g[j] = static_cast<double>(wave.cell.eta[j]) *
                   std::sqrt(2.0 * (v + wave.cell.lambda)) -
               p_eff;
    }
    wave.g = make_field(grid, std::move(g));
    return wave;
}

namespace {

// Cumulative work integral at time t, linearly interpolated between
// recorded snapshots.
double work_at(const Trajectory& traj, double t) {
    const std::vector<double>& ts = traj.times;
    if (t <= ts.front()) return traj.diagnostics.front().work_integral;
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (ts[i] < t) continue;
        const double w0 = traj.diagnostics[i - 1].work_integral;
        const double w1 = traj.diagnostics[i].work_integral;
        const double span = ts[i] - ts[i - 1];
        const double a = span > 0.0 ? (t - ts[i - 1]) / span : 1.0;
        return w0 + a * (w1 - w0);
    }
    return traj.diagnostics.back().work_integral;
}

}  // namespace

ResonanceScan resonance_scan(const ForcingSpec& spec, double p,
                             const std::vector<double>& omegas, const TorusField& u0,
                             double t_end, double t_burn, int workers) {
    if (omegas.empty()) throw std::invalid_argument("resonance_scan: empty omega list");
    for (std::size_t i = 1; i < omegas.size(); ++i) {
        if (omegas[i] <= omegas[i - 1])
            throw std::invalid_argument("resonance_scan: omegas must be strictly increasing");
    }
    if (!(t_burn >= 0.0) || !(t_burn < t_end))
        throw std::invalid_argument("resonance_scan: need 0 <= t_burn < t_end");

    ForcingSpec steady = spec;
    steady.omega = 0.0;

    ResonanceScan scan;
    scan.p = p;
    scan.omegas = omegas;
    scan.omega_cr = critical_frequency(steady);
    scan.window = resonance_window(steady, p);
    const std::size_t count = omegas.size();
    scan.avg_power.assign(count, 0.0);
    scan.slopes.assign(count, std::numeric_limits<double>::quiet_NaN());

    const std::size_t kmin_fit = 4;
    const std::size_t kmax_fit = std::min<std::size_t>(64, u0.grid.n / 4);

    const auto run_one = [&](std::size_t i) {
        ForcingSpec fs = steady;
        fs.omega = omegas[i];
        SolverConfig cfg;
        cfg.t_end = t_end;
        cfg.record_every = t_end / 200.0;
        const Trajectory traj = evolve(u0, fs, cfg);
        scan.avg_power[i] =
            (traj.diagnostics.back().work_integral - work_at(traj, t_burn)) / (t_end - t_burn);
        if (kmax_fit > kmin_fit) {
            const SpectrumReport report =
                fit_spectrum(make_field(traj.grid, traj.states.back()), kmin_fit, kmax_fit);
            if (report.has_slope) scan.slopes[i] = report.slope;
        }
    };

    const int pool_size = std::max(1, std::min(workers, static_cast<int>(count)));
    if (pool_size <= 1) {
        for (std::size_t i = 0; i < count; ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(pool_size));
        for (int w = 0; w < pool_size; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                    if (failed.load()) return;
                    try {
                        run_one(i);
                    } catch (...) {
                        const std::lock_guard<std::mutex> lock(error_mutex);
                        if (!failed.exchange(true)) first_error = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (std::thread& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    double peak = 0.0;
    for (double v : scan.avg_power) peak = std::max(peak, v);
    scan.theta = std::max(1e-3 * peak, 1e-12);
    scan.classification.reserve(count);
    for (double v : scan.avg_power) {
        scan.classification.push_back(v > scan.theta ? ResonanceClass::Resonant
                                                     : ResonanceClass::NonResonant);
    }
    return scan;
}

double frame_discrepancy(const TorusField& u0, const ForcingSpec& spec, double c, double t_end,
                         double cfl) {
    if (spec.omega != 0.0)
        throw std::invalid_argument("frame_discrepancy requires steady forcing");
    const double turns = wrap_angle(c * t_end);
    if (std::min(turns, two_pi - turns) > 1e-9)
        throw std::invalid_argument(
            "frame_discrepancy: c*t_end must be a whole number of torus turns");

    SolverConfig cfg;
    cfg.cfl = cfl;
    cfg.t_end = t_end;
    cfg.record_every = 0.0;  // endpoints only

    const Trajectory a = evolve(u0, spec, cfg);

    TorusField shifted = u0;
    for (double& v : shifted.values) v -= c;
    ForcingSpec boosted = spec;
    boosted.omega = -c;
    const Trajectory b = evolve(shifted, boosted, cfg);

    double worst = 0.0;
    const std::vector<double>& av = a.states.back();
    const std::vector<double>& bv = b.states.back();
    for (std::size_t j = 0; j < u0.grid.n; ++j) {
        worst = std::max(worst, std::abs(bv[j] - (av[j] - c)));
    }
    return worst;
}

}  // namespace burgerlab
