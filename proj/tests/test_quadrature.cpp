#include <cmath>
#include <vector>

#include "doctest.h"

#include "burgerlab/grid.hpp"
#include "burgerlab/quadrature.hpp"

using namespace burgerlab;

TEST_CASE("adaptive simpson reproduces smooth closed forms") {
    const auto sine = [](double x) { return std::sin(x); };
    CHECK(adaptive_simpson(sine, 0.0, pi) == doctest::Approx(2.0).epsilon(1e-13));

    const auto sq = [](double x) { return x * x; };
    CHECK(adaptive_simpson(sq, 0.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    const auto cosine = [](double x) { return std::cos(x); };
    CHECK(std::abs(adaptive_simpson(cosine, 0.0, two_pi)) <= 1e-13);

    CHECK(adaptive_simpson(sine, 1.0, 1.0) == 0.0);
}

TEST_CASE("breakpoints recover full accuracy on kinked integrands") {
    const auto kink = [](double x) { return std::abs(x - 1.0 / 3.0); };
    const double exact = 0.5 * (1.0 / 9.0 + 4.0 / 9.0);
    CHECK(integrate_with_breaks(kink, 0.0, 1.0, {1.0 / 3.0}) ==
          doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("the square-root kink of the pinned profile integrates exactly") {
    // integral over one period of sqrt(2) |cos(x/2)| = 4 sqrt(2); the
    // integrand is only Lipschitz at x = pi, where a breakpoint is needed.
    const auto speed = [](double x) { return std::sqrt(2.0) * std::abs(std::cos(0.5 * x)); };
    CHECK(integrate_with_breaks(speed, 0.0, two_pi, {pi}) ==
          doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("breakpoints outside the interval are ignored") {
    const auto sine = [](double x) { return std::sin(x); };
    CHECK(integrate_with_breaks(sine, 0.0, pi, {-5.0, 9.0}) ==
          doctest::Approx(2.0).epsilon(1e-13));
}
