#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "burgerlab/forcing.hpp"
#include "burgerlab/grid.hpp"

namespace burgerlab {

enum class Branch { Subcritical, Supercritical };

/// Stationary solution / corrector data for mean momentum p.
///
/// Subcritical (|p| <= p_cr): lambda = 0; the profile is u(x) = eta(x)
/// sqrt(2 V(x)) with eta = +1 on (x0, xbar) and -1 on (xbar, x0 + 2pi),
/// where x0 is a potential minimum and the admissible shock sits at xbar.
/// xbar is stored unwrapped, x0 < xbar <= x0 + 2pi (it collapses to x0
/// only at the degenerate endpoint p = -p_cr, where the jump has size
/// zero anyway). Supercritical: lambda > 0 solves the mean constraint and
/// the profile is the smooth branch u(x) = sign(p) sqrt(2 (V(x) + lambda));
/// x0 marks the smallest point where |u| = |p|.
///
/// phi holds corrector point values at the right cell interfaces,
/// phi[j] = phi((j+1) dx), normalized so phi(x0) = 0; ubar holds exact
/// cell averages of the profile, so mean(ubar) = p to quadrature accuracy
/// and cumulative sums of (ubar - p) dx reproduce phi up to the anchoring
/// constant.
struct CellSolution {
    double p = 0.0;
    double lambda = 0.0;
    Branch branch = Branch::Subcritical;
    double x0 = 0.0;
    double xbar = std::numeric_limits<double>::quiet_NaN();
    std::vector<int> eta;      // sign at cell centers; constant sign(p) when supercritical
    std::vector<double> kinks; // angles where the profile is non-smooth (shock + minima)
    TorusField phi;
    TorusField ubar;
};

/// p_cr = (sqrt(2)/2pi) integral of sqrt(V); the mean momentum below which
/// stationary profiles pin to the potential wells.
double critical_momentum(const ForcingSpec& spec);

/// Effective Hamiltonian: exactly 0 for |p| <= p_cr, otherwise the unique
/// lambda > 0 with (sqrt(2)/2pi) integral sqrt(V + lambda) = |p|.
double effective_hamiltonian(double p, const ForcingSpec& spec);

/// (sqrt(2)/2pi) integral sqrt(V + lambda) for lambda >= 0: the mean
/// momentum of the smooth branch at level lambda, and the inverse of
/// effective_hamiltonian above the critical momentum.
double momentum_of_level(double lambda, const ForcingSpec& spec);

/// Shock location for the subcritical profile anchored at the potential
/// minimum x0: the unique xbar in [x0, x0 + 2pi] balancing the two sign
/// branches, integral_{x0}^{xbar}(sqrt(2V) - p) = integral_{xbar}^{x0+2pi}
/// (sqrt(2V) + p), by bisection to 1e-12. Rejects |p| > p_cr.
double solve_xbar(double p, const ForcingSpec& spec, double x0);

/// Stationary profile with mean p discretized on `grid`. For subcritical p
/// the solution anchors at the potential minimum nearest to `x0` (smallest
/// minimum when absent); supercritical profiles are unique and ignore x0.
/// See enumerate_stationary for the full subcritical family.
CellSolution solve_cell_problem(double p, const ForcingSpec& spec, const TorusGrid& grid,
                                std::optional<double> x0 = std::nullopt);

/// Alias of solve_cell_problem; named for the homogenization viewpoint
/// (phi is the corrector of the Hamilton-Jacobi cell problem).
CellSolution build_corrector(double p, const ForcingSpec& spec, const TorusGrid& grid,
                             std::optional<double> x0 = std::nullopt);

/// Alias of solve_cell_problem; named for the PDE viewpoint (ubar is the
/// stationary entropy solution).
CellSolution build_stationary(double p, const ForcingSpec& spec, const TorusGrid& grid,
                              std::optional<double> x0 = std::nullopt);

/// All stationary entropy solutions with mean p: one per potential minimum
/// below the critical momentum, the single smooth branch above it.
std::vector<CellSolution> enumerate_stationary(double p, const ForcingSpec& spec,
                                               const TorusGrid& grid);

struct ShockJump {
    std::size_t cell = 0;     // jump sits at the right interface of this cell
    double location = 0.0;    // angle of that interface
    double size = 0.0;        // summed increment across the merged run
};

struct JumpReport {
    std::vector<ShockJump> jumps;
    double threshold = 0.0;   // representative detection scale (5x median increment)
    bool admissible = true;
};

/// Detect discrete jumps of ubar: cyclic increments exceeding 5x the local
/// smooth increment scale (median of the neighboring increments), with
/// adjacent flagged cells merged into one jump. Admissible means every jump
/// goes downward; an upward jump is tolerated only where the profile value
/// itself vanishes (|u|^2/2 <= 1e-10, i.e. V + lambda ~ 0, the sign flip of
/// eta at a potential minimum).
JumpReport check_entropy_jumps(const CellSolution& sol);

/// d(phi)/dx at the right interfaces (same indexing as CellSolution::phi),
/// via sixth-order finite differences on stencils chosen to avoid the
/// corrector kinks (the shock and the potential minima).
std::vector<double> corrector_gradient(const CellSolution& sol);

/// max_j |(p + phi'(x_j))^2/2 - V(x_j) - lambda| over the interfaces:
/// the pointwise defect of the stationary Hamilton-Jacobi relation.
double hamiltonian_residual(const CellSolution& sol, const ForcingSpec& spec);

/// Distance of reconstructed potentials from the traveling-wave form:
/// for each snapshot, half the oscillation of U(t, .) + lambda t - phi,
/// which ignores the free additive constant.
std::vector<double> wave_convergence(const std::vector<std::vector<double>>& potentials,
                                     const std::vector<double>& times, const CellSolution& sol);

}  // namespace burgerlab
