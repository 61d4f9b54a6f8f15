#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "burgerlab/cell.hpp"
#include "burgerlab/forcing.hpp"
#include "burgerlab/grid.hpp"
#include "burgerlab/solver.hpp"

namespace burgerlab {

/// omega_cr = (1/2pi) integral sqrt(2 V): the critical traveling-frame
/// frequency offset; numerically identical to critical_momentum (same
/// integral).
double critical_frequency(const ForcingSpec& spec);

/// (p - omega_cr, p + omega_cr): forcing speeds inside this window drive
/// the system to a shocked (resonant) traveling wave; outside it a smooth
/// wave absorbs no net power.
std::pair<double, double> resonance_window(const ForcingSpec& spec, double p);

/// Traveling-wave solution u(t, x) = p + G(x - omega t), built from the
/// cell problem at effective momentum p' = p - omega in the co-moving
/// frame z = x - omega t.
struct TravelingWave {
    double p = 0.0;
    double omega = 0.0;
    CellSolution cell;  // z-frame cell solution at momentum p - omega
    TorusField g;       // zero-mean profile G sampled pointwise at centers
};

/// G(z) = eta(z) sqrt(2(V(z) + lambda)) - (p - omega), sampled pointwise so
/// the defining identity (G + p - omega)^2/2 = V + lambda holds to rounding.
/// Subcritical (shocked) iff |p - omega| < omega_cr; x0 selects the anchor
/// minimum as in solve_cell_problem.
TravelingWave build_traveling_wave(double p, double omega, const ForcingSpec& spec,
                                   const TorusGrid& grid,
                                   std::optional<double> x0 = std::nullopt);

enum class ResonanceClass { Resonant, NonResonant };

struct ResonanceScan {
    double p = 0.0;
    std::vector<double> omegas;
    std::vector<double> avg_power;
    std::vector<ResonanceClass> classification;
    std::vector<double> slopes;  // final-state decay fit per omega (NaN below noise)
    double omega_cr = 0.0;
    std::pair<double, double> window{0.0, 0.0};
    double theta = 0.0;  // classification threshold actually used
};

/// For each omega: evolve u0 under f(x - omega t) to t_end, average the
/// power input over [t_burn, t_end] via the cumulative work integral, and
/// classify Resonant when the average exceeds theta = 1e-3 x the scan's own
/// maximum. slopes holds the final-state log-log decay fit over k in
/// [4, min(64, n/4)]. Runs are independent and execute on `workers`
/// threads; results assemble deterministically in omega order.
ResonanceScan resonance_scan(const ForcingSpec& spec, double p,
                             const std::vector<double>& omegas, const TorusField& u0,
                             double t_end, double t_burn, int workers = 1);

/// Galilean frame check for steady forcing: run A evolves u0 as given; run
/// B evolves u0 - c under forcing speed -c. When the frame displacement
/// c*t_end is a whole number of torus turns (validated to 1e-9) the exact
/// solutions satisfy B = A - c at t_end; returns max_j |B_j - (A_j - c)|.
/// The discrete schemes disagree at O(dx) -- the sonic point and the time
/// steps differ between frames -- so the discrepancy vanishes only under
/// grid refinement.
double frame_discrepancy(const TorusField& u0, const ForcingSpec& spec, double c, double t_end,
                         double cfl = 0.5);

}  // namespace burgerlab
