#include <cmath>
#include <vector>

#include "doctest.h"

#include "burgerlab/grid.hpp"

using namespace burgerlab;

TEST_CASE("grid construction validates the cell count") {
    CHECK_THROWS(make_grid(0));
    CHECK_THROWS(make_grid(4));
    CHECK_THROWS(make_grid(7));
    CHECK_THROWS(make_grid(100));

    const TorusGrid grid = make_grid(8);
    CHECK(grid.n == 8);
    CHECK(grid.dx() == doctest::Approx(two_pi / 8.0).epsilon(1e-15));
    CHECK(grid.center(0) == doctest::Approx(pi / 8.0).epsilon(1e-15));
    CHECK(grid.center(7) == doctest::Approx(two_pi - pi / 8.0).epsilon(1e-15));
}

TEST_CASE("field construction checks the value count") {
    const TorusGrid grid = make_grid(8);
    CHECK_THROWS(make_field(grid, std::vector<double>(7, 0.0)));
    const TorusField f = make_field(grid, std::vector<double>(8, 1.5));
    CHECK(f.values.size() == 8);
}

TEST_CASE("wrap_angle maps onto [0, 2pi)") {
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(two_pi) == 0.0);
    CHECK(wrap_angle(-0.5) == doctest::Approx(two_pi - 0.5).epsilon(1e-15));
    CHECK(wrap_angle(7.5 * pi) == doctest::Approx(1.5 * pi).epsilon(1e-12));
    CHECK(wrap_angle(-6.0 * pi) == doctest::Approx(0.0));
}

TEST_CASE("norms are normalized by the cell count") {
    const TorusGrid grid = make_grid(16);
    const TorusField flat = make_field(grid, std::vector<double>(16, 2.0));
    CHECK(mean(flat) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(lq_norm(flat, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(lq_norm(flat, 2.0) == doctest::Approx(2.0).epsilon(1e-15));

    std::vector<double> spike(16, 0.0);
    spike[3] = 1.0;
    const TorusField s = make_field(grid, spike);
    CHECK(lq_norm(s, 1.0) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
    CHECK(lq_norm(s, 2.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(max_abs(s) == 1.0);
    CHECK(min_value(s) == 0.0);
    CHECK(max_value(s) == 1.0);
}

TEST_CASE("cyclic increments include the wrap pair") {
    const TorusGrid grid = make_grid(8);
    std::vector<double> ramp(8);
    for (std::size_t j = 0; j < 8; ++j) ramp[j] = static_cast<double>(j);
    CHECK(max_cyclic_increment(make_field(grid, ramp)) == 7.0);
}

TEST_CASE("center_sin matches the library sine at cell centers") {
    // The reference argument k*x_j is itself rounded (|arg| reaches ~200 at
    // k = 31, one ulp ~ 3e-14), so the library sine can drift a few 1e-14
    // from the exactly phase-reduced value; 2e-13 still catches any real
    // reduction bug, which would show up at O(dx) or worse.
    const std::size_t n = 32;
    const TorusGrid grid = make_grid(n);
    for (long long k : {1LL, 2LL, 5LL, 31LL}) {
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(center_sin(k, j, n) ==
                  doctest::Approx(std::sin(static_cast<double>(k) * grid.center(j)))
                      .epsilon(2e-13));
            CHECK(center_cos(k, j, n) ==
                  doctest::Approx(std::cos(static_cast<double>(k) * grid.center(j)))
                      .epsilon(2e-13));
        }
    }
}

TEST_CASE("center_sin is exactly antisymmetric about pi") {
    // sin(k(2pi - x)) = -sin(kx), and cell n-1-j mirrors cell j; the integer
    // phase reduction makes the identity hold bit for bit, which is what
    // lets pairwise_mean cancel forcing samples to a signed zero.
    const std::size_t n = 64;
    for (long long k : {1LL, 3LL, 7LL}) {
        std::vector<double> samples(n);
        for (std::size_t j = 0; j < n; ++j) {
            samples[j] = center_sin(k, j, n);
            CHECK(center_sin(k, n - 1 - j, n) == -samples[j]);
        }
        CHECK(pairwise_mean(samples) == 0.0);
    }
}

TEST_CASE("center_sin commutes with power-of-two grid scaling") {
    // Sample j of frequency m*k on an m-times finer grid is the same double
    // as sample j of frequency k on the coarse grid: the phase fraction
    // r/n is unchanged and every scale factor is a power of two.
    const std::size_t n_b = 64;
    for (int m : {2, 4, 8}) {
        for (long long freq : {1LL, 3LL}) {
            const std::size_t n_a = n_b * static_cast<std::size_t>(m);
            for (std::size_t j = 0; j < n_b; ++j) {
                CHECK(center_sin(freq * m, j, n_a) == center_sin(freq, j, n_b));
            }
        }
    }
}

TEST_CASE("pairwise_mean averages exactly for flat data") {
    CHECK(pairwise_mean(std::vector<double>(10, 1.0)) == 1.0);
    CHECK(pairwise_mean({1.0, 2.0, 3.0, 4.0}) == 2.5);
}
