#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "burgerlab/cell.hpp"
#include "burgerlab/grid.hpp"
#include "burgerlab/solver.hpp"
#include "burgerlab/spectrum.hpp"

namespace burgerlab {

/// Least-squares slope of log|u_hat(k)| versus log k over k in [kmin, kmax],
/// using only modes with magnitude above 1e-13 (structural zeros -- e.g. the
/// even harmonics of odd-symmetric profiles -- would corrupt the log fit).
/// Requires kmin >= 2 and kmax <= n/4; throws "insufficient spectral
/// content" when fewer than 8 usable modes remain.
double decay_exponent(const SpectrumReport& report, std::size_t kmin, std::size_t kmax);

/// DFT magnitudes plus the decay fit over [kmin, kmax]; has_slope = false
/// when fewer than 8 modes rise above the noise floor.
SpectrumReport fit_spectrum(const TorusField& field, std::size_t kmin, std::size_t kmax);

/// Largest one-cell jump: max_j |values_{j+1} - values_j| (cyclic).
double shock_indicator(const TorusField& field);

/// Scale-free shock flag: the largest one-cell jump exceeds
/// threshold * (max - min of values).
bool is_shocked(const TorusField& field, double threshold = 0.25);

/// Minimum lq_norm(field - candidate.ubar, q) over the candidates and the
/// index attaining it; ties go to the smallest index.
std::pair<double, std::size_t> distance_to_set(const TorusField& field,
                                               const std::vector<CellSolution>& candidates,
                                               double q);

struct ConvergenceReport {
    std::vector<double> times;
    std::vector<double> distances_l1;
    std::vector<double> distances_l2;
    std::size_t argmin_index = 0;  // closest candidate at the final snapshot
    double shock_time_estimate = std::numeric_limits<double>::infinity();
};

/// L1/L2 distances to the stationary set per snapshot, the candidate
/// closest at the final time, and the first snapshot time flagged shocked
/// (infinity when none is).
ConvergenceReport track_convergence(const Trajectory& traj,
                                    const std::vector<CellSolution>& candidates,
                                    double shock_threshold = 0.25);

/// Per-snapshot decay fit: (t, slope) when the fit window holds at least
/// 8 modes above the noise floor, (t, nullopt) otherwise.
std::vector<std::pair<double, std::optional<double>>> spectrum_dynamics(const Trajectory& traj,
                                                                        std::size_t kmin,
                                                                        std::size_t kmax);

}  // namespace burgerlab
