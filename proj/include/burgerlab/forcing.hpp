#pragma once

#include <cstddef>
#include <vector>

#include "burgerlab/grid.hpp"

namespace burgerlab {

enum class ForcingKind { CosineSquared, Tabulated };

/// Forcing f(x - omega*t) derived from a periodic potential V >= 0 with
/// min V = 0, via f = V'. The closed-form family is
///   V(x) = cos^2(kappa0 * x / 2),  f(x) = -(kappa0/2) sin(kappa0 * x);
/// Tabulated carries point samples of V at cell centers (shifted so the
/// minimum is exactly zero) with f obtained by spectral differentiation.
struct ForcingSpec {
    ForcingKind kind = ForcingKind::CosineSquared;
    int kappa0 = 1;
    double omega = 0.0;
    TorusField table;             // Tabulated: shifted potential samples
    std::vector<double> table_f;  // Tabulated: forcing samples at centers
};

ForcingSpec make_cosine_forcing(int kappa0, double omega = 0.0);
ForcingSpec make_tabulated_forcing(const TorusField& potential_samples,
                                   double omega = 0.0);

/// Steady potential V(x) (the traveling shift enters forcing_eval only).
double potential_eval(const ForcingSpec& spec, double x);
double potential_max(const ForcingSpec& spec);

/// f evaluated at z = x - omega*t (mod 2*pi).
double forcing_eval(const ForcingSpec& spec, double x, double t);

/// Locations of the zeros of V in [0, 2*pi), ascending. Closed form for
/// CosineSquared ((2j+1)*pi/kappa0); for Tabulated, samples within 1e-10 of
/// zero clustered by cyclic grid adjacency, one representative per cluster.
std::vector<double> find_minima(const ForcingSpec& spec);

/// Discrete forcing samples at cell centers at time t with the discrete
/// mean removed (mirror-paired summation, so the steady CosineSquared
/// samples -- exactly antisymmetric by construction -- get an exact zero
/// adjustment and stay bit-reproducible across nested grids).
std::vector<double> forcing_samples(const ForcingSpec& spec, const TorusGrid& grid,
                                    double t);

}  // namespace burgerlab
