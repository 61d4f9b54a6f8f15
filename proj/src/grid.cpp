#include "burgerlab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace burgerlab {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

TorusGrid make_grid(std::size_t n) {
    if (n < 8 || !power_of_two(n)) {
        throw std::invalid_argument("grid size must be a power of two >= 8, got " +
                                    std::to_string(n));
    }
    return TorusGrid{n};
}

TorusField make_field(const TorusGrid& grid, std::vector<double> values) {
    if (values.size() != grid.n) {
        throw std::invalid_argument("field has " + std::to_string(values.size()) +
                                    " values for an n=" + std::to_string(grid.n) + " grid");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("field values must be finite");
        }
    }
    return TorusField{grid, std::move(values)};
}

double mean(const TorusField& field) {
    double acc = 0.0;
    for (double v : field.values) acc += v;
    return acc / static_cast<double>(field.grid.n);
}

double lq_norm(const TorusField& field, double q) {
    if (!(q >= 1.0)) {
        throw std::invalid_argument("lq_norm requires q >= 1");
    }
    double acc = 0.0;
    if (q == 1.0) {
        for (double v : field.values) acc += std::abs(v);
    } else if (q == 2.0) {
        for (double v : field.values) acc += v * v;
    } else {
        for (double v : field.values) acc += std::pow(std::abs(v), q);
    }
    acc /= static_cast<double>(field.grid.n);
    if (q == 1.0) return acc;
    if (q == 2.0) return std::sqrt(acc);
    return std::pow(acc, 1.0 / q);
}

double max_abs(const TorusField& field) {
    double m = 0.0;
    for (double v : field.values) m = std::max(m, std::abs(v));
    return m;
}

double min_value(const TorusField& field) {
    double m = field.values.front();
    for (double v : field.values) m = std::min(m, v);
    return m;
}

double max_value(const TorusField& field) {
    double m = field.values.front();
    for (double v : field.values) m = std::max(m, v);
    return m;
}

double max_cyclic_increment(const TorusField& field) {
    const auto& v = field.values;
    const std::size_t n = v.size();
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        m = std::max(m, std::abs(v[(j + 1) % n] - v[j]));
    }
    return m;
}

double wrap_angle(double x) {
    double y = std::fmod(x, two_pi);
    if (y < 0.0) y += two_pi;
    if (y >= two_pi) y = 0.0;  // fmod can land exactly on 2*pi after the add
    return y;
}

namespace {

// sin(pi * r / n) for integer r in [0, 2n), folded so the actual std::sin
// argument lies in [0, pi/2]. Identical (r, n) pairs -- and pairs scaled by
// a common power of two -- produce bit-identical results.
double sin_reduced(unsigned long long r, unsigned long long n) {
    double sign = 1.0;
    if (r >= n) {  // sin(pi + t) = -sin(t)
        sign = -1.0;
        r -= n;
    }
    if (2 * r > n) r = n - r;  // sin(pi - t) = sin(t)
    const double arg = static_cast<double>(r) * (pi / static_cast<double>(n));
    return sign * std::sin(arg);
}

}  // namespace

double center_sin(long long k, std::size_t j, std::size_t n) {
    const unsigned long long two_n = 2ull * n;
    long long phase = k * static_cast<long long>(2 * j + 1);
    long long r = phase % static_cast<long long>(two_n);
    if (r < 0) r += static_cast<long long>(two_n);
    return sin_reduced(static_cast<unsigned long long>(r), n);
}

double center_cos(long long k, std::size_t j, std::size_t n) {
    // cos(t) = sin(t + pi/2): shift the reduced phase by n/2 grid half-steps.
    const unsigned long long two_n = 2ull * n;
    long long phase = k * static_cast<long long>(2 * j + 1);
    long long r = phase % static_cast<long long>(two_n);
    if (r < 0) r += static_cast<long long>(two_n);
    unsigned long long shifted = (static_cast<unsigned long long>(r) + n / 2) % two_n;
    return sin_reduced(shifted, n);
}

double pairwise_mean(const std::vector<double>& values) {
    const std::size_t n = values.size();
    double acc = 0.0;
    for (std::size_t j = 0; j < n / 2; ++j) {
        acc += values[j] + values[n - 1 - j];
    }
    if (n % 2 != 0) acc += values[n / 2];
    return acc / static_cast<double>(n);
}

}  // namespace burgerlab
