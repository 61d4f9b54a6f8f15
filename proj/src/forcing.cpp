#include "burgerlab/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "burgerlab/spectrum.hpp"

namespace burgerlab {

namespace {

// Periodic Catmull-Rom interpolation of point samples at cell centers.
double catmull_rom(const std::vector<double>& v, double x, double dx) {
    const std::size_t n = v.size();
    const double s = x / dx - 0.5;
    const double fl = std::floor(s);
    const double t = s - fl;
    const long long i1 = static_cast<long long>(fl);
    auto at = [&](long long i) {
        long long m = i % static_cast<long long>(n);
        if (m < 0) m += static_cast<long long>(n);
        return v[static_cast<std::size_t>(m)];
    };
    const double v0 = at(i1 - 1), v1 = at(i1), v2 = at(i1 + 1), v3 = at(i1 + 2);
    return 0.5 * (2.0 * v1 + (-v0 + v2) * t + (2.0 * v0 - 5.0 * v1 + 4.0 * v2 - v3) * t * t +
                  (-v0 + 3.0 * v1 - 3.0 * v2 + v3) * t * t * t);
}

std::vector<double> spectral_derivative(const TorusField& field) {
    const std::size_t n = field.grid.n;
    std::vector<std::complex<double>> a(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = field.values[j];
    fft_inplace(a);
    // Multiply bin k by i*k with signed frequencies; drop the Nyquist bin
    // (its derivative is not representable on the grid).
    a[0] = 0.0;
    for (std::size_t k = 1; k < n / 2; ++k) {
        const std::complex<double> ik(0.0, static_cast<double>(k));
        a[k] *= ik;
        a[n - k] *= std::complex<double>(0.0, -static_cast<double>(k));
    }
    a[n / 2] = 0.0;
    // Inverse transform via conjugation: ifft(x) = conj(fft(conj(x)))/n.
    for (auto& z : a) z = std::conj(z);
    fft_inplace(a);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = a[j].real() / static_cast<double>(n);
    }
    return out;
}

}  // namespace

ForcingSpec make_cosine_forcing(int kappa0, double omega) {
    if (kappa0 < 1) {
        throw std::invalid_argument("kappa0 must be a positive integer");
    }
    ForcingSpec spec;
    spec.kind = ForcingKind::CosineSquared;
    spec.kappa0 = kappa0;
    spec.omega = omega;
    return spec;
}

ForcingSpec make_tabulated_forcing(const TorusField& potential_samples, double omega) {
    ForcingSpec spec;
    spec.kind = ForcingKind::Tabulated;
    spec.kappa0 = 0;
    spec.omega = omega;
    spec.table = potential_samples;
    const double vmin = min_value(potential_samples);
    for (double& v : spec.table.values) v -= vmin;  // pin min V to exactly 0
    spec.table_f = spectral_derivative(spec.table);
    return spec;
}

double potential_eval(const ForcingSpec& spec, double x) {
    if (spec.kind == ForcingKind::CosineSquared) {
        const double c = std::cos(0.5 * spec.kappa0 * wrap_angle(x));
        return c * c;
    }
    // Interpolation can overshoot slightly below zero near the minimum;
    // clamp to keep sqrt(V) well-defined downstream.
    return std::max(0.0, catmull_rom(spec.table.values, wrap_angle(x), spec.table.grid.dx()));
}

double potential_max(const ForcingSpec& spec) {
    if (spec.kind == ForcingKind::CosineSquared) return 1.0;
    return max_value(spec.table);
}

double forcing_eval(const ForcingSpec& spec, double x, double t) {
    const double z = wrap_angle(x - spec.omega * t);
    if (spec.kind == ForcingKind::CosineSquared) {
        return -0.5 * spec.kappa0 * std::sin(spec.kappa0 * z);
    }
    return catmull_rom(spec.table_f, z, spec.table.grid.dx());
}

std::vector<double> find_minima(const ForcingSpec& spec) {
    if (spec.kind == ForcingKind::CosineSquared) {
        std::vector<double> out;
        for (int j = 0; j < spec.kappa0; ++j) {
            out.push_back((2.0 * j + 1.0) * pi / spec.kappa0);
        }
        return out;
    }

    const auto& v = spec.table.values;
    const std::size_t n = v.size();
    std::vector<bool> is_zero(n);
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
        is_zero[j] = v[j] <= 1e-10;
        any = any || is_zero[j];
    }
    if (!any) {
        throw std::runtime_error("tabulated potential has no zero after shift");
    }
    // Cluster cyclically adjacent zero cells; keep each cluster's argmin.
    std::vector<double> out;
    std::vector<bool> seen(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        if (!is_zero[j] || seen[j]) continue;
        // Walk left to the cluster start (wrapping), then sweep right.
        std::size_t start = j;
        while (is_zero[(start + n - 1) % n] && (start + n - 1) % n != j) {
            start = (start + n - 1) % n;
        }
        std::size_t best = start;
        std::size_t i = start;
        do {
            seen[i] = true;
            if (v[i] < v[best]) best = i;
            i = (i + 1) % n;
        } while (is_zero[i] && i != start);
        out.push_back(spec.table.grid.center(best));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> forcing_samples(const ForcingSpec& spec, const TorusGrid& grid,
                                    double t) {
    const std::size_t n = grid.n;
    std::vector<double> f(n);
    const bool steady = spec.omega == 0.0 || t == 0.0;
    if (spec.kind == ForcingKind::CosineSquared && steady) {
        const double amp = -0.5 * spec.kappa0;
        for (std::size_t j = 0; j < n; ++j) {
            f[j] = amp * center_sin(spec.kappa0, j, n);
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            f[j] = forcing_eval(spec, grid.center(j), t);
        }
    }
    const double mu = pairwise_mean(f);
    for (double& x : f) x -= mu;
    return f;
}

}  // namespace burgerlab
