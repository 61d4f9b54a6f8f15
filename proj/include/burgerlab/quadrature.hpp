#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace burgerlab {

namespace detail {

template <typename F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm,
                            double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double h6 = (b - a) / 12.0;
    const double left = h6 * (fa + 4.0 * flm + fm);
    const double right = h6 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature with Richardson correction. tol is the
/// absolute error target for the panel [a, b]; subdivision splits it in half.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-13,
                        int max_depth = 48) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double floor_tol = std::max(tol, 1e-16 * std::abs(b - a));
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, floor_tol, max_depth);
}

/// Same, but with mandatory subdivision at the supplied breakpoints
/// (e.g. zeros of the potential, where sqrt(V) is only Lipschitz, and the
/// shock point xbar). Breakpoints outside (a, b) are ignored.
template <typename F>
double integrate_with_breaks(const F& f, double a, double b,
                             const std::vector<double>& breakpoints,
                             double tol = 1e-13) {
    if (a == b) return 0.0;
    std::vector<double> cuts;
    cuts.push_back(a);
    for (double c : breakpoints) {
        if (c > a && c < b) cuts.push_back(c);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    const double span = b - a;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        if (hi <= lo) continue;
        const double panel_tol = std::max(tol * (hi - lo) / span, 1e-16);
        acc += adaptive_simpson(f, lo, hi, panel_tol);
    }
    return acc;
}

}  // namespace burgerlab
