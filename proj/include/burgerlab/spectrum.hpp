#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "burgerlab/grid.hpp"

namespace burgerlab {

/// One-sided discrete spectrum of a real field:
///   magnitude[k-1] = |(1/n) sum_j v_j exp(-i k x_j)| for k = 1 .. n/2.
/// slope/fit_kmin/fit_kmax are NaN/0 until a decay fit is attached
/// (see analysis.hpp).
struct SpectrumReport {
    std::size_t n = 0;
    std::vector<double> magnitude;  // index k-1, k = 1 .. n/2
    double slope = 0.0;
    bool has_slope = false;
    std::size_t fit_kmin = 0;
    std::size_t fit_kmax = 0;
};

SpectrumReport dft_magnitudes(const TorusField& field);

/// In-place radix-2 FFT (size must be a power of two).
void fft_inplace(std::vector<std::complex<double>>& a);

/// Mean-free spectral energy using the exact real-DFT pairing:
///   2 * sum_{k=1}^{n/2-1} |u_k|^2 + |u_{n/2}|^2.
/// Equals (1/n) sum v^2 - mean^2 up to roundoff; the Nyquist bin is
/// self-paired and carries weight one.
double spectral_energy(const SpectrumReport& report);

/// Relative gap |grid energy - spectral energy| / max(grid energy, tiny).
double parseval_gap(const TorusField& field);

}  // namespace burgerlab
