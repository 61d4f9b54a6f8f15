#include "burgerlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace burgerlab {

namespace {

// g(u) = u^2/2 precomputed per cell; the flux needs only comparisons.
inline double riemann_flux(double ul, double ur, double gl, double gr) {
    if (ul <= ur) {
        if (ul <= 0.0 && 0.0 <= ur) return 0.0;
        return std::min(gl, gr);
    }
    return std::max(gl, gr);
}

// One conservative update with explicit-Euler source. The arithmetic here
// is deliberately fixed (evaluation order, single dt/dx quotient): grid
// rescalings by powers of two then reproduce bit-identical trajectories.
// Returns sum_j ftilde_j * (v_j + (dt/2) ftilde_j) with v the post-flux
// state, the exact per-step source work times n/dt.
double apply_step(std::vector<double>& u, std::vector<double>& g, std::vector<double>& flux,
                  const std::vector<double>& ftilde, double dt, double dx) {
    const std::size_t n = u.size();
    const double dtdx = dt / dx;
    const double halfdt = 0.5 * dt;
    for (std::size_t j = 0; j < n; ++j) g[j] = 0.5 * u[j] * u[j];
    for (std::size_t j = 0; j + 1 < n; ++j) flux[j] = riemann_flux(u[j], u[j + 1], g[j], g[j + 1]);
    flux[n - 1] = riemann_flux(u[n - 1], u[0], g[n - 1], g[0]);
    double work = 0.0;
    double left = flux[n - 1];
    for (std::size_t j = 0; j < n; ++j) {
        const double v = u[j] - dtdx * (flux[j] - left);
        const double f = ftilde[j];
        work += f * (v + halfdt * f);
        u[j] = v + dt * f;
        left = flux[j];
    }
    return work;
}

// Zero-mean forcing samples refreshed per step. Steady specs are sampled
// once; the traveling cosine path rebuilds from cached phase tables so a
// scan over omega stays cheap.
class ForcingSampler {
public:
    ForcingSampler(const ForcingSpec& spec, const TorusGrid& grid) : spec_(spec), grid_(grid) {
        samples_ = forcing_samples(spec, grid, 0.0);
        if (steady()) return;
        if (spec.kind == ForcingKind::CosineSquared) {
            const std::size_t n = grid.n;
            sin_table_.resize(n);
            cos_table_.resize(n);
            for (std::size_t j = 0; j < n; ++j) {
                sin_table_[j] = center_sin(spec.kappa0, j, n);
                cos_table_[j] = center_cos(spec.kappa0, j, n);
            }
        }
    }

    bool steady() const { return spec_.omega == 0.0; }

    const std::vector<double>& at(double t) {
        if (steady() || t == cached_t_) return samples_;
        if (spec_.kind == ForcingKind::CosineSquared) {
            // f_j = -a/2 k0 sin(k0(x_j - wt)) expanded through the phase tables.
            const double amp = -0.5 * static_cast<double>(spec_.kappa0);
            const double phase = static_cast<double>(spec_.kappa0) * spec_.omega * t;
            const double c = std::cos(phase);
            const double s = std::sin(phase);
            for (std::size_t j = 0; j < samples_.size(); ++j)
                samples_[j] = amp * (c * sin_table_[j] - s * cos_table_[j]);
            const double mu = pairwise_mean(samples_);
            for (double& v : samples_) v -= mu;
        } else {
            samples_ = forcing_samples(spec_, grid_, t);
        }
        cached_t_ = t;
        return samples_;
    }

private:
    const ForcingSpec& spec_;
    TorusGrid grid_;
    std::vector<double> samples_;
    std::vector<double> sin_table_;
    std::vector<double> cos_table_;
    double cached_t_ = 0.0;
};

double max_abs_vec(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

FrameDiagnostics make_diagnostics(const std::vector<double>& u, const std::vector<double>& ftilde,
                                  double dx, double work) {
    const std::size_t n = u.size();
    FrameDiagnostics d;
    double sum = 0.0, sum2 = 0.0, dot = 0.0, jump = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        sum += u[j];
        sum2 += u[j] * u[j];
        dot += ftilde[j] * u[j];
        const double inc = u[(j + 1) % n] - u[j];
        jump = std::max(jump, std::abs(inc));
    }
    (void)dx;
    d.mean = sum / static_cast<double>(n);
    d.l2_energy = sum2 / static_cast<double>(n);
    d.power_input = dot / static_cast<double>(n);
    d.shock_indicator = jump;
    d.work_integral = work;
    return d;
}

}  // namespace

double godunov_flux(double ul, double ur) {
    return riemann_flux(ul, ur, 0.5 * ul * ul, 0.5 * ur * ur);
}

TorusField step(const TorusField& state, const ForcingSpec& spec, double t, double dt,
                double cfl) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    const double dx = state.grid.dx();
    const double speed = std::max(max_abs_vec(state.values), 1e-8);
    if (dt > cfl * dx / speed * (1.0 + 1e-12))
        throw std::invalid_argument("step: dt violates the CFL bound cfl*dx/max|u|");
    TorusField out = state;
    std::vector<double> g(state.grid.n), flux(state.grid.n);
    ForcingSampler sampler(spec, state.grid);
    apply_step(out.values, g, flux, sampler.at(t), dt, dx);
    return out;
}

Trajectory evolve(const TorusField& u0, const ForcingSpec& spec, const SolverConfig& cfg) {
    if (!(cfg.cfl > 0.0) || cfg.cfl > 0.5)
        throw std::invalid_argument("evolve: cfl must lie in (0, 1/2]");
    if (!(cfg.t_end > 0.0)) throw std::invalid_argument("evolve: t_end must be positive");

    const TorusGrid grid = u0.grid;
    const std::size_t n = grid.n;
    const double dx = grid.dx();

    Trajectory traj;
    traj.grid = grid;
    std::vector<double> u = u0.values;
    std::vector<double> g(n), flux(n);
    ForcingSampler sampler(spec, grid);

    // Runaway guard from the stationary envelope: |u| can approach
    // sqrt(2(k + V)) (shifted by omega in the traveling frame) but never
    // grow past it by an order of magnitude.
    const auto [k_minus, k_plus] = max_principle_bounds(u0, spec);
    const double v_max = potential_max(spec);
    const double envelope =
        std::sqrt(2.0 * (std::max(k_plus, k_minus) + v_max)) + std::abs(spec.omega);
    const double abort_bound = 10.0 * std::max(envelope, 1.0);

    const double src_speed = std::sqrt(dx * max_abs_vec(sampler.at(0.0)));
    const double floor = std::max(cfg.wave_speed_floor, 1e-300);

    double t = 0.0;
    double work = 0.0;
    double next_record = cfg.record_every > 0.0 ? cfg.record_every : cfg.t_end;

    auto record = [&](double at) {
        traj.times.push_back(at);
        traj.states.push_back(u);
        traj.diagnostics.push_back(make_diagnostics(u, sampler.at(at), dx, work));
    };
    record(0.0);

    while (t < cfg.t_end) {
        const double maxabs = max_abs_vec(u);
        if (maxabs > abort_bound)
            throw std::runtime_error("evolve: solution escaped the stationary envelope (|u| = " +
                                     std::to_string(maxabs) + ")");
        const double speed = std::max(std::max(maxabs, src_speed), floor);
        double dt = cfg.cfl * dx / speed;
        if (dt >= cfg.t_end - t) dt = cfg.t_end - t;  // exact (Sterbenz) final clamp
        const double w = apply_step(u, g, flux, sampler.at(t), dt, dx);
        work += dt * (w / static_cast<double>(n));
        t = (dt == cfg.t_end - t) ? cfg.t_end : t + dt;
        ++traj.steps;
        bool crossed = false;
        while (next_record <= t && next_record < cfg.t_end) {
            crossed = true;
            next_record += cfg.record_every;
        }
        if (t >= cfg.t_end) {
            record(cfg.t_end);
            break;
        }
        if (crossed) record(t);
    }
    return traj;
}

std::pair<double, double> max_principle_bounds(const TorusField& u0, const ForcingSpec& spec) {
    double k_plus = 0.0, k_minus = 0.0;
    for (std::size_t j = 0; j < u0.grid.n; ++j) {
        const double v = potential_eval(spec, u0.grid.center(j));
        const double up = std::max(u0.values[j], 0.0);
        const double um = std::max(-u0.values[j], 0.0);
        k_plus = std::max(k_plus, 0.5 * up * up - v);
        k_minus = std::max(k_minus, 0.5 * um * um - v);
    }
    return {k_minus, k_plus};
}

double power_input(const TorusField& state, const ForcingSpec& spec, double t) {
    const std::vector<double> f = forcing_samples(spec, state.grid, t);
    double dot = 0.0;
    for (std::size_t j = 0; j < state.grid.n; ++j) dot += f[j] * state.values[j];
    return dot / static_cast<double>(state.grid.n);
}

std::vector<std::vector<double>> reconstruct_potential(const Trajectory& traj, double p,
                                                       const ForcingSpec& spec) {
    if (spec.omega != 0.0)
        throw std::invalid_argument("reconstruct_potential: steady forcing required");
    const std::size_t m = traj.states.size();
    if (m == 0) throw std::invalid_argument("reconstruct_potential: empty trajectory");
    const double dx = traj.grid.dx();
    const double x_ref = traj.grid.center(0);
    const double v_ref = potential_eval(spec, x_ref);

    std::vector<std::vector<double>> out(m);
    double c = 0.0;
    double h_prev = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const std::vector<double>& u = traj.states[i];
        double mu = 0.0;
        for (double v : u) mu += v;
        mu /= static_cast<double>(u.size());
        if (std::abs(mu - p) > 1e-8)
            throw std::invalid_argument("reconstruct_potential: snapshot mean drifted from p");
        const double h = 0.5 * u[0] * u[0] - v_ref;  // -dU/dt at the anchor
        if (i > 0) c -= 0.5 * (h_prev + h) * (traj.times[i] - traj.times[i - 1]);
        h_prev = h;
        std::vector<double> row(u.size());
        double acc = c;
        for (std::size_t j = 0; j < u.size(); ++j) {
            acc += (u[j] - p) * dx;
            row[j] = acc;  // potential at the right interface (j+1)dx
        }
        out[i] = std::move(row);
    }
    return out;
}

}  // namespace burgerlab
