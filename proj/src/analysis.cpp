#include "burgerlab/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace burgerlab {

namespace {

constexpr double noise_floor = 1e-13;

void validate_window(std::size_t n, std::size_t kmin, std::size_t kmax) {
    if (kmin < 2) throw std::invalid_argument("decay fit requires kmin >= 2");
    if (kmax <= kmin) throw std::invalid_argument("decay fit requires kmax > kmin");
    if (kmax > n / 4) throw std::invalid_argument("decay fit requires kmax <= n/4");
}

std::optional<double> fit_slope(const std::vector<double>& magnitude, std::size_t kmin,
                                std::size_t kmax) {
    std::size_t count = 0;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = kmin; k <= kmax; ++k) {
        const double m = magnitude[k - 1];
        if (m <= noise_floor) continue;
        const double x = std::log(static_cast<double>(k));
        const double y = std::log(m);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 8) return std::nullopt;
    const double denom = static_cast<double>(count) * sxx - sx * sx;
    return (static_cast<double>(count) * sxy - sx * sy) / denom;
}

}  // namespace

double decay_exponent(const SpectrumReport& report, std::size_t kmin, std::size_t kmax) {
    validate_window(report.n, kmin, kmax);
    const auto slope = fit_slope(report.magnitude, kmin, kmax);
    if (!slope) throw std::runtime_error("insufficient spectral content");
    return *slope;
}

SpectrumReport fit_spectrum(const TorusField& field, std::size_t kmin, std::size_t kmax) {
    validate_window(field.grid.n, kmin, kmax);
    SpectrumReport report = dft_magnitudes(field);
    report.fit_kmin = kmin;
    report.fit_kmax = kmax;
    const auto slope = fit_slope(report.magnitude, kmin, kmax);
    report.has_slope = slope.has_value();
    report.slope = slope.value_or(std::numeric_limits<double>::quiet_NaN());
    return report;
}

double shock_indicator(const TorusField& field) { return max_cyclic_increment(field); }

bool is_shocked(const TorusField& field, double threshold) {
    const double range = max_value(field) - min_value(field);
    return shock_indicator(field) > threshold * range;
}

std::pair<double, std::size_t> distance_to_set(const TorusField& field,
                                               const std::vector<CellSolution>& candidates,
                                               double q) {
    if (candidates.empty())
        throw std::invalid_argument("distance_to_set: empty candidate list");
    const std::size_t n = field.grid.n;
    double best = std::numeric_limits<double>::infinity();
    std::size_t argmin = 0;
    TorusField diff = field;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const TorusField& ubar = candidates[c].ubar;
        if (ubar.grid.n != n)
            throw std::invalid_argument("distance_to_set: candidate grid mismatch");
        for (std::size_t j = 0; j < n; ++j) diff.values[j] = field.values[j] - ubar.values[j];
        const double d = lq_norm(diff, q);
        if (d < best) {
            best = d;
            argmin = c;
        }
    }
    return {best, argmin};
}

ConvergenceReport track_convergence(const Trajectory& traj,
                                    const std::vector<CellSolution>& candidates,
                                    double shock_threshold) {
    ConvergenceReport report;
    report.times = traj.times;
    report.distances_l1.reserve(traj.states.size());
    report.distances_l2.reserve(traj.states.size());
    for (std::size_t m = 0; m < traj.states.size(); ++m) {
        const TorusField state = make_field(traj.grid, traj.states[m]);
        const auto [d1, arg1] = distance_to_set(state, candidates, 1.0);
        report.distances_l1.push_back(d1);
        report.distances_l2.push_back(distance_to_set(state, candidates, 2.0).first);
        if (m + 1 == traj.states.size()) report.argmin_index = arg1;
        if (std::isinf(report.shock_time_estimate) && is_shocked(state, shock_threshold)) {
            report.shock_time_estimate = traj.times[m];
        }
    }
    return report;
}

std::vector<std::pair<double, std::optional<double>>> spectrum_dynamics(const Trajectory& traj,
                                                                        std::size_t kmin,
                                                                        std::size_t kmax) {
    std::vector<std::pair<double, std::optional<double>>> out;
    out.reserve(traj.states.size());
    for (std::size_t m = 0; m < traj.states.size(); ++m) {
        const SpectrumReport report =
            fit_spectrum(make_field(traj.grid, traj.states[m]), kmin, kmax);
        out.emplace_back(traj.times[m], report.has_slope ? std::optional<double>(report.slope)
                                                         : std::nullopt);
    }
    return out;
}

}  // namespace burgerlab
