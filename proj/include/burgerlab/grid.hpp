#pragma once

#include <cstddef>
#include <vector>

namespace burgerlab {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

/// Uniform periodic grid on [0, 2*pi): n cells of width dx = 2*pi/n,
/// cell centers x_j = (j + 1/2) dx, cell interfaces at j*dx.
/// n must be a power of two and at least 8 (keeps transforms radix-2 and
/// grid refinements nested).
struct TorusGrid {
    std::size_t n = 0;

    double dx() const { return two_pi / static_cast<double>(n); }
    double center(std::size_t j) const {
        return (static_cast<double>(j) + 0.5) * dx();
    }
    double interface(std::size_t j) const {
        return static_cast<double>(j) * dx();
    }

    bool operator==(const TorusGrid&) const = default;
};

/// Periodic scalar field: one value per cell. Conserved quantities
/// (solver states, ubar) store cell averages; potentials store point
/// samples -- see the owning operation for which convention applies.
struct TorusField {
    TorusGrid grid;
    std::vector<double> values;
};

/// Throws std::invalid_argument unless n is a power of two >= 8.
TorusGrid make_grid(std::size_t n);

/// Builds a field after validating the value count and finiteness.
TorusField make_field(const TorusGrid& grid, std::vector<double> values);

/// Arithmetic mean (1/n) * sum(values).
double mean(const TorusField& field);

/// Normalized L^q norm: ((1/n) * sum |values|^q)^(1/q), q >= 1.
double lq_norm(const TorusField& field, double q);

double max_abs(const TorusField& field);
double min_value(const TorusField& field);
double max_value(const TorusField& field);

/// Largest |v_{j+1} - v_j| over all cyclically adjacent pairs.
double max_cyclic_increment(const TorusField& field);

/// x reduced to [0, 2*pi).
double wrap_angle(double x);

/// sin(k * x_j) for integer k at the center of cell j of an n-cell grid,
/// computed through an exact integer phase reduction
///   r = k*(2j+1) mod 2n, folded into the first quadrant,
/// so that sampled sine grids are exactly antisymmetric under
/// j -> n-1-j and refinements of the same mode agree bit-for-bit.
double center_sin(long long k, std::size_t j, std::size_t n);

/// cos(k * x_j), same reduction (symmetric partner of center_sin).
double center_cos(long long k, std::size_t j, std::size_t n);

/// Mean computed by summing mirror pairs (j, n-1-j) first. For exactly
/// antisymmetric samples every pair contributes +0.0, making the result
/// exactly zero rather than accumulation noise.
double pairwise_mean(const std::vector<double>& values);

}  // namespace burgerlab
