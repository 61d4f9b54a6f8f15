#include "burgerlab/cell.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "burgerlab/quadrature.hpp"

namespace burgerlab {

namespace {

// Unique representative of angle theta in (a, a + 2pi), or nothing if it
// coincides with a (callers treat interval endpoints separately).
bool representative_in(double theta, double a, double b, double* out) {
    const double w = wrap_angle(theta - a);
    if (w <= 0.0 || a + w >= b) return false;
    *out = a + w;
    return true;
}

std::vector<double> breaks_in(const std::vector<double>& kinks, double a, double b) {
    std::vector<double> out;
    for (double k : kinks) {
        double rep = 0.0;
        if (representative_in(k, a, b, &rep)) out.push_back(rep);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Integral of |u| over [x0, x0 + offset] along sqrt(2 V); monotone in the
// offset, used to place the shock.
double arc_integral(const ForcingSpec& spec, const std::vector<double>& minima, double x0,
                    double offset) {
    if (offset <= 0.0) return 0.0;
    const auto f = [&](double x) { return std::sqrt(2.0 * potential_eval(spec, x)); };
    return integrate_with_breaks(f, x0, x0 + offset, breaks_in(minima, x0, x0 + offset), 1e-13);
}

// Exact cell averages and interface corrector values from one pass of
// adaptive quadrature per cell, with the profile's kinks as panel breaks.
// phi comes out anchored at phi(0) = 0; anchor_phi moves that to x0.
template <typename Profile>
void discretize(const Profile& u_of_x, const std::vector<double>& kinks, const TorusGrid& grid,
                double p, TorusField* phi, TorusField* ubar) {
    const std::size_t n = grid.n;
    const double dx = grid.dx();
    std::vector<double> phi_vals(n), ubar_vals(n);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double a = grid.interface(j);
        const double b = a + dx;
        const double cell = integrate_with_breaks(u_of_x, a, b, breaks_in(kinks, a, b), 1e-15);
        ubar_vals[j] = cell / dx;
        acc += cell - p * dx;
        phi_vals[j] = acc;
    }
    *phi = make_field(grid, std::move(phi_vals));
    *ubar = make_field(grid, std::move(ubar_vals));
}

// Shift phi so that phi(x0) = 0: subtract the accumulated integral of
// (u - p) over [0, x0].
template <typename Profile>
void anchor_phi(TorusField* phi, const Profile& u_of_x, const std::vector<double>& breaks,
                double x0, double p) {
    if (x0 <= 0.0) return;
    const double shift =
        integrate_with_breaks(u_of_x, 0.0, x0, breaks_in(breaks, 0.0, x0), 1e-15) - p * x0;
    for (double& v : phi->values) v -= shift;
}

// Offset of the shock from x0 along the + branch: the unique s in [0, 2pi]
// with arc_integral(x0, s) = pi (p_cr + p). The arc integral is strictly
// increasing wherever V > 0, so bisection applies; targets within 1e-12 of
// the endpoints snap to them (the quadrature noise floor -- near the
// endpoints sqrt(2V) vanishes and the offset is not better conditioned).
double shock_offset(const ForcingSpec& spec, const std::vector<double>& minima, double x0,
                    double p, double p_cr) {
    const double target = pi * (p_cr + p);
    const double full = arc_integral(spec, minima, x0, two_pi);
    const double snap = 1e-12 * std::max(1.0, full);
    if (target <= snap) return 0.0;
    if (target >= full - snap) return two_pi;
    double lo = 0.0, hi = two_pi;
    for (int it = 0; it < 64 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        (arc_integral(spec, minima, x0, mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

CellSolution build_subcritical(double p, const ForcingSpec& spec, const TorusGrid& grid,
                               const std::vector<double>& minima, double p_cr) {
    const double x0 = minima.front();
    const double offset = shock_offset(spec, minima, x0, p, p_cr);

    CellSolution sol;
    sol.p = p;
    sol.lambda = 0.0;
    sol.branch = Branch::Subcritical;
    sol.x0 = x0;
    sol.xbar = x0 + offset;
    sol.kinks = minima;
    if (offset > 0.0 && offset < two_pi) sol.kinks.push_back(wrap_angle(sol.xbar));

    const auto u_of_x = [&](double x) {
        const double sign = wrap_angle(x - x0) < offset ? 1.0 : -1.0;
        return sign * std::sqrt(2.0 * potential_eval(spec, x));
    };
    discretize(u_of_x, sol.kinks, grid, p, &sol.phi, &sol.ubar);
    anchor_phi(&sol.phi, u_of_x, sol.kinks, x0, p);

    sol.eta.resize(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j)
        sol.eta[j] = wrap_angle(grid.center(j) - x0) < offset ? 1 : -1;
    return sol;
}

// Smallest angle where V equals `level` (the supercritical profile crosses
// |u| = |p| there). Closed form for the cosine well, scan + bisection
// otherwise.
double first_level_crossing(const ForcingSpec& spec, double level) {
    const double v_max = potential_max(spec);
    const double c = std::clamp(level, 0.0, v_max);
    if (spec.kind == ForcingKind::CosineSquared)
        return 2.0 / static_cast<double>(spec.kappa0) * std::acos(std::sqrt(c));
    const std::size_t samples = 1 << 14;
    const double h = two_pi / static_cast<double>(samples);
    double prev = potential_eval(spec, 0.0) - c;
    for (std::size_t i = 1; i <= samples; ++i) {
        const double x = static_cast<double>(i) * h;
        const double cur = potential_eval(spec, x) - c;
        if (prev == 0.0) return static_cast<double>(i - 1) * h;
        if ((prev < 0.0) != (cur < 0.0)) {
            double lo = static_cast<double>(i - 1) * h, hi = x;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = potential_eval(spec, mid) - c;
                if ((fm < 0.0) == (prev < 0.0))
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev = cur;
    }
    return 0.0;
}

CellSolution build_supercritical(double p, const ForcingSpec& spec, const TorusGrid& grid,
                                 const std::vector<double>& minima) {
    CellSolution sol;
    sol.p = p;
    sol.lambda = effective_hamiltonian(p, spec);
    sol.branch = Branch::Supercritical;
    sol.x0 = first_level_crossing(spec, 0.5 * p * p - sol.lambda);
    const double sign = p >= 0.0 ? 1.0 : -1.0;
    const auto u_of_x = [&](double x) {
        return sign * std::sqrt(2.0 * (potential_eval(spec, x) + sol.lambda));
    };
    // The smooth branch has no kinks (sol.kinks stays empty); minima are
    // passed only to help the per-cell quadrature place panels.
    discretize(u_of_x, minima, grid, p, &sol.phi, &sol.ubar);
    anchor_phi(&sol.phi, u_of_x, minima, sol.x0, p);
    sol.eta.assign(grid.n, p >= 0.0 ? 1 : -1);
    return sol;
}

// Fornberg weights for the first derivative at offset s on the seven
// equispaced nodes 0..6 (unit spacing).
std::array<double, 7> fd7_weights(double s) {
    std::array<std::array<double, 2>, 7> c{};
    double c1 = 1.0;
    double c4 = -s;
    c[0][0] = 1.0;
    for (int i = 1; i <= 6; ++i) {
        double c2 = 1.0;
        double c5 = c4;
        c4 = static_cast<double>(i) - s;
        for (int j = 0; j < i; ++j) {
            const double c3 = static_cast<double>(i - j);
            c2 *= c3;
            if (j == i - 1) {
                c[i][1] = c1 * (c[i - 1][0] - c5 * c[i - 1][1]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            c[j][1] = (c4 * c[j][1] - c[j][0]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::array<double, 7> w{};
    for (int k = 0; k < 7; ++k) w[k] = c[k][1];
    return w;
}

}  // namespace

double momentum_of_level(double lambda, const ForcingSpec& spec) {
    if (lambda < 0.0) throw std::invalid_argument("momentum_of_level: lambda must be >= 0");
    const auto minima = find_minima(spec);
    const auto f = [&](double x) { return std::sqrt(potential_eval(spec, x) + lambda); };
    const double integral = integrate_with_breaks(f, 0.0, two_pi, minima, 1e-13);
    return std::sqrt(2.0) / two_pi * integral;
}

double critical_momentum(const ForcingSpec& spec) { return momentum_of_level(0.0, spec); }

double effective_hamiltonian(double p, const ForcingSpec& spec) {
    const double p_abs = std::abs(p);
    if (p_abs <= critical_momentum(spec)) return 0.0;
    double lo = std::max(0.0, 0.5 * p * p - potential_max(spec));
    double hi = 0.5 * p * p;
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double resid = momentum_of_level(mid, spec) - p_abs;
        if (std::abs(resid) <= 1e-14) return mid;
        (resid < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double solve_xbar(double p, const ForcingSpec& spec, double x0) {
    const double p_cr = critical_momentum(spec);
    if (std::abs(p) > p_cr + 1e-12)
        throw std::domain_error("solve_xbar: |p| exceeds the critical momentum");
    return x0 + shock_offset(spec, find_minima(spec), x0, p, p_cr);
}

CellSolution solve_cell_problem(double p, const ForcingSpec& spec, const TorusGrid& grid,
                                std::optional<double> x0) {
    const auto minima = find_minima(spec);
    const double p_cr = critical_momentum(spec);
    if (std::abs(p) > p_cr) return build_supercritical(p, spec, grid, minima);

    // Anchor at the minimum nearest to the requested x0 (cyclic distance),
    // defaulting to the smallest; rotate so the anchor leads the list.
    std::size_t anchor = 0;
    if (x0) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < minima.size(); ++k) {
            const double w = wrap_angle(minima[k] - *x0);
            const double d = std::min(w, two_pi - w);
            if (d < best) {
                best = d;
                anchor = k;
            }
        }
    }
    std::vector<double> rotated(minima.begin() + static_cast<std::ptrdiff_t>(anchor),
                                minima.end());
    rotated.insert(rotated.end(), minima.begin(),
                   minima.begin() + static_cast<std::ptrdiff_t>(anchor));
    return build_subcritical(p, spec, grid, rotated, p_cr);
}

CellSolution build_corrector(double p, const ForcingSpec& spec, const TorusGrid& grid,
                             std::optional<double> x0) {
    return solve_cell_problem(p, spec, grid, x0);
}

CellSolution build_stationary(double p, const ForcingSpec& spec, const TorusGrid& grid,
                              std::optional<double> x0) {
    return solve_cell_problem(p, spec, grid, x0);
}

std::vector<CellSolution> enumerate_stationary(double p, const ForcingSpec& spec,
                                               const TorusGrid& grid) {
    const auto minima = find_minima(spec);
    const double p_cr = critical_momentum(spec);
    std::vector<CellSolution> out;
    if (std::abs(p) > p_cr) {
        out.push_back(build_supercritical(p, spec, grid, minima));
        return out;
    }
    for (std::size_t k = 0; k < minima.size(); ++k) {
        std::vector<double> rotated(minima.begin() + static_cast<std::ptrdiff_t>(k), minima.end());
        rotated.insert(rotated.end(), minima.begin(), minima.begin() + static_cast<std::ptrdiff_t>(k));
        out.push_back(build_subcritical(p, spec, grid, rotated, p_cr));
    }
    return out;
}

JumpReport check_entropy_jumps(const CellSolution& sol) {
    const TorusField& field = sol.ubar;
    const std::size_t n = field.grid.n;
    const std::vector<double>& v = field.values;
    std::vector<double> delta(n), mags(n);
    for (std::size_t j = 0; j < n; ++j) {
        delta[j] = v[(j + 1) % n] - v[j];
        mags[j] = std::abs(delta[j]);
    }
    const double range = max_value(field) - min_value(field);
    const double floor_scale = 1e-9 * std::max(range, 1e-30);

    // A cell holds a jump when its increment exceeds 5x the local smooth
    // increment scale: the median of the eight surrounding increments, so
    // an isolated jump (or a jump split across two cells) cannot inflate
    // its own yardstick.
    std::vector<char> flagged(n, 0);
    std::array<double, 8> window{};
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t m = 0;
        for (int off = -4; off <= 4; ++off) {
            if (off == 0) continue;
            const long long idx = (static_cast<long long>(j) + off + static_cast<long long>(n)) %
                                  static_cast<long long>(n);
            window[m++] = mags[static_cast<std::size_t>(idx)];
        }
        std::nth_element(window.begin(), window.begin() + 3, window.end());
        flagged[j] = mags[j] > std::max(5.0 * window[3], floor_scale) ? 1 : 0;
    }

    JumpReport report;
    std::vector<double> sorted = mags;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(n / 2),
                     sorted.end());
    report.threshold = std::max(5.0 * sorted[n / 2], floor_scale);

    // Walk cyclically from the quietest cell (never interior to a genuine
    // jump) and merge consecutive flagged cells into single jumps.
    const std::size_t start = static_cast<std::size_t>(
        std::min_element(mags.begin(), mags.end()) - mags.begin());
    const double up_tol = 1e-10 * std::max(1.0, range);
    for (std::size_t step = 0; step < n;) {
        if (!flagged[(start + step) % n]) {
            ++step;
            continue;
        }
        ShockJump jump;
        const double enter = v[(start + step) % n];
        double peak = -1.0;
        std::size_t last = 0;
        while (step < n && flagged[(start + step) % n]) {
            const std::size_t k = (start + step) % n;
            jump.size += delta[k];
            if (mags[k] > peak) {
                peak = mags[k];
                jump.cell = k;
            }
            last = k;
            ++step;
        }
        jump.location = field.grid.interface((jump.cell + 1) % n);
        report.jumps.push_back(jump);
        if (jump.size > up_tol) {
            // An upward jump is admissible only where the profile value
            // itself vanishes: |u|^2/2 = V + lambda on the profile, so both
            // endpoint values must sit at a zero of V + lambda.
            const double exit = v[(last + 1) % n];
            if (0.5 * std::max(enter * enter, exit * exit) > 1e-10) report.admissible = false;
        }
    }
    return report;
}

std::vector<double> corrector_gradient(const CellSolution& sol) {
    const TorusGrid& grid = sol.phi.grid;
    const std::size_t n = grid.n;
    const double dx = grid.dx();

    // Corrector values at interfaces i*dx, i = 0..n-1 (phi[j] lives at
    // (j+1)dx; phi(0) = phi(2pi) closes the chain).
    std::vector<double> point(n);
    point[0] = sol.phi.values[n - 1];
    for (std::size_t i = 1; i < n; ++i) point[i] = sol.phi.values[i - 1];

    static const std::array<std::array<double, 7>, 7> rows = [] {
        std::array<std::array<double, 7>, 7> r{};
        for (int s = 0; s < 7; ++s) r[static_cast<std::size_t>(s)] = fd7_weights(s);
        return r;
    }();

    // A stencil window [i+a, i+a+6] is valid when no kink falls strictly
    // inside it; kinks exactly on the window edge are one-sided and fine.
    const auto window_blockers = [&](std::size_t i, int a) {
        const double lo = (static_cast<double>(i) + a) * dx;
        int count = 0;
        for (double k : sol.kinks) {
            const double q = wrap_angle(k - lo) / dx;
            if (q > 1e-9 && q < 6.0 - 1e-9) ++count;
        }
        return count;
    };
    static const std::array<int, 7> preference = {-3, -2, -4, -1, -5, 0, -6};

    std::vector<double> grad_at_point(n);
    for (std::size_t i = 0; i < n; ++i) {
        int best = -3, best_count = window_blockers(i, -3);
        for (int a : preference) {
            const int count = window_blockers(i, a);
            if (count < best_count) {
                best = a;
                best_count = count;
            }
            if (best_count == 0) break;
        }
        const auto& w = rows[static_cast<std::size_t>(-best)];
        double acc = 0.0;
        for (int k = 0; k < 7; ++k) {
            const std::size_t idx =
                static_cast<std::size_t>((static_cast<long long>(i) + best + k +
                                          2 * static_cast<long long>(n)) %
                                         static_cast<long long>(n));
            acc += w[static_cast<std::size_t>(k)] * point[idx];
        }
        grad_at_point[i] = acc / dx;
    }

    // Re-index to the right-interface convention of phi.
    std::vector<double> grad(n);
    for (std::size_t j = 0; j < n; ++j) grad[j] = grad_at_point[(j + 1) % n];
    return grad;
}

double hamiltonian_residual(const CellSolution& sol, const ForcingSpec& spec) {
    const std::vector<double> grad = corrector_gradient(sol);
    const TorusGrid& grid = sol.phi.grid;
    double worst = 0.0;
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double x = grid.interface((j + 1) % grid.n);
        const double u = sol.p + grad[j];
        const double r = 0.5 * u * u - potential_eval(spec, x) - sol.lambda;
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

std::vector<double> wave_convergence(const std::vector<std::vector<double>>& potentials,
                                     const std::vector<double>& times, const CellSolution& sol) {
    if (potentials.size() != times.size())
        throw std::invalid_argument("wave_convergence: times/potentials size mismatch");
    std::vector<double> out(potentials.size());
    for (std::size_t m = 0; m < potentials.size(); ++m) {
        const std::vector<double>& row = potentials[m];
        if (row.size() != sol.phi.values.size())
            throw std::invalid_argument("wave_convergence: snapshot size mismatch");
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double r = row[j] + sol.lambda * times[m] - sol.phi.values[j];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        out[m] = 0.5 * (hi - lo);
    }
    return out;
}

}  // namespace burgerlab
