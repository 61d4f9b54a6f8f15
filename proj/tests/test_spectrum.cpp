#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"

#include "burgerlab/grid.hpp"
#include "burgerlab/spectrum.hpp"

using namespace burgerlab;

namespace {

TorusField sample(std::size_t n, double (*f)(double)) {
    const TorusGrid grid = make_grid(n);
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = f(grid.center(j));
    return make_field(grid, std::move(v));
}

}  // namespace

TEST_CASE("pure modes land on their own wavenumber") {
    const std::size_t n = 64;
    const SpectrumReport sine = dft_magnitudes(sample(n, [](double x) { return std::sin(3.0 * x); }));
    REQUIRE(sine.magnitude.size() == n / 2);
    CHECK(sine.magnitude[2] == doctest::Approx(0.5).epsilon(1e-13));
    for (std::size_t k = 1; k <= n / 2; ++k) {
        if (k != 3) CHECK(sine.magnitude[k - 1] <= 1e-13);
    }

    const SpectrumReport cosine =
        dft_magnitudes(sample(n, [](double x) { return std::cos(5.0 * x); }));
    CHECK(cosine.magnitude[4] == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("the constant offset never leaks into the spectrum") {
    const std::size_t n = 32;
    const TorusGrid grid = make_grid(n);
    std::vector<double> v(n, 7.25);
    const SpectrumReport flat = dft_magnitudes(make_field(grid, std::move(v)));
    for (double m : flat.magnitude) CHECK(m <= 1e-14);
}

TEST_CASE("the fft agrees with the naive transform") {
    const std::size_t n = 16;
    const TorusGrid grid = make_grid(n);
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j)
        v[j] = std::sin(grid.center(j)) + 0.3 * std::cos(2.0 * grid.center(j)) +
               0.05 * static_cast<double>(j % 3);
    const SpectrumReport fast = dft_magnitudes(make_field(grid, v));

    for (std::size_t k = 1; k <= n / 2; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            const double phase = -static_cast<double>(k) * grid.center(j);
            acc += v[j] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        CHECK(fast.magnitude[k - 1] ==
              doctest::Approx(std::abs(acc) / static_cast<double>(n)).epsilon(1e-12));
    }
}

TEST_CASE("parseval holds for smooth and rough fields") {
    CHECK(parseval_gap(sample(256, [](double x) {
              return std::sin(x) + 0.5 * std::cos(7.0 * x) + 0.1 * std::sin(40.0 * x);
          })) <= 1e-12);

    // Sawtooth: every mode is populated.
    const TorusGrid grid = make_grid(256);
    std::vector<double> saw(256);
    for (std::size_t j = 0; j < 256; ++j) saw[j] = grid.center(j) - pi;
    CHECK(parseval_gap(make_field(grid, std::move(saw))) <= 1e-12);
}

TEST_CASE("spectral energy equals the grid variance") {
    const TorusField field = sample(128, [](double x) {
        return 2.0 + std::sin(x) - 0.25 * std::cos(9.0 * x);
    });
    const double m = mean(field);
    double var = 0.0;
    for (double v : field.values) var += (v - m) * (v - m);
    var /= static_cast<double>(field.grid.n);
    CHECK(spectral_energy(dft_magnitudes(field)) == doctest::Approx(var).epsilon(1e-12));
}

TEST_CASE("fft_inplace round trips through the inverse") {
    std::vector<std::complex<double>> a(8);
    for (std::size_t j = 0; j < 8; ++j)
        a[j] = {static_cast<double>(j) - 3.0, 0.5 * static_cast<double>(j % 2)};
    const std::vector<std::complex<double>> original = a;

    fft_inplace(a);
    // Inverse via conjugation: ifft(x) = conj(fft(conj(x))) / n.
    for (auto& z : a) z = std::conj(z);
    fft_inplace(a);
    for (std::size_t j = 0; j < 8; ++j) {
        const std::complex<double> back = std::conj(a[j]) / 8.0;
        CHECK(std::abs(back - original[j]) <= 1e-13);
    }
}
