#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "burgerlab/forcing.hpp"
#include "burgerlab/grid.hpp"

namespace burgerlab {

struct SolverConfig {
    double cfl = 0.5;            // must be <= 1/2 for the forced scheme
    double t_end = 1.0;
    double record_every = 0.1;   // <= 0 records only the endpoints
    double wave_speed_floor = 1e-8;
};

/// Per-snapshot diagnostics. work_integral accumulates the exact discrete
/// source work sum_steps dt * <ftilde * (v_postflux + dt*ftilde/2)>, so the
/// discrete energy obeys E(t2) - E(t1) <= 2 * (W(t2) - W(t1)) exactly
/// (the Godunov part is dissipative for the quadratic entropy).
struct FrameDiagnostics {
    double mean = 0.0;
    double l2_energy = 0.0;        // (1/n) sum u^2
    double power_input = 0.0;      // (1/n) sum ftilde * u
    double shock_indicator = 0.0;  // max cyclic |increment|
    double work_integral = 0.0;
};

struct Trajectory {
    TorusGrid grid;
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::vector<FrameDiagnostics> diagnostics;
    std::size_t steps = 0;
};

/// Exact Riemann (Godunov) flux for g(u) = u^2/2: minimum of g over
/// [ul, ur] for ul <= ur (zero through the sonic point), maximum of the
/// endpoint values otherwise.
double godunov_flux(double ul, double ur);

/// One forward-Euler step of the finite-volume scheme
///   u_j <- u_j - (dt/dx)(F_{j+1/2} - F_{j-1/2}) + dt * ftilde_j(t).
/// Throws if dt violates dt <= cfl * dx / max(max|u|, 1e-8).
TorusField step(const TorusField& state, const ForcingSpec& spec, double t, double dt,
                double cfl = 0.5);

/// Time march with adaptive dt = cfl*dx/speed,
/// speed = max(max|u|, sqrt(dx*max|f|), 1e-8); the sqrt term guards starts
/// from rest under nonzero forcing. The final step is clamped to land on
/// t_end exactly. Aborts (throws) if max|u| exceeds ten times the initial
/// stationary-envelope bound.
Trajectory evolve(const TorusField& u0, const ForcingSpec& spec, const SolverConfig& cfg);

/// Smallest k_minus, k_plus >= 0 (returned in that order) with
///   -u0 <= sqrt(2(k_minus + V)) and u0 <= sqrt(2(k_plus + V)) pointwise.
/// The evolution stays inside this envelope for steady forcing.
std::pair<double, double> max_principle_bounds(const TorusField& u0, const ForcingSpec& spec);

/// Normalized instantaneous power (1/n) sum ftilde_j(t) * u_j.
double power_input(const TorusField& state, const ForcingSpec& spec, double t);

/// Potential reconstruction per snapshot:
///   U(t, x_j) = sum_{i<=j} (values_i - p) dx + c(t),
/// anchored by c'(t) = -(u(t, x_ref)^2/2 - V(x_ref)) at x_ref = first cell
/// center, integrated by the trapezoid rule over snapshot times. With
/// cell-average values the cumulative sum telescopes to the potential at
/// the right interface (j+1)dx. Requires every snapshot mean to equal p
/// within 1e-8. Steady forcing only.
std::vector<std::vector<double>> reconstruct_potential(const Trajectory& traj, double p,
                                                       const ForcingSpec& spec);

}  // namespace burgerlab
