#include "burgerlab/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace burgerlab {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

double parse_double(const std::string& text, const std::string& path, std::size_t lineno) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size() || text.empty())
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad number '" + text +
                                 "'");
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    // Integral values print plainly ("20"), sidestepping the %g switch to
    // scientific notation ("2e+01") at low precision.
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // Try shorter forms that still round-trip, for readable files.
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[64];
        std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
        if (std::strtod(shorter, nullptr) == v) return shorter;
    }
    return buf;
}

void ensure_parent_dir(const std::string& path) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

void write_field_csv(const std::string& path, const TorusField& field) {
    ensure_parent_dir(path);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "x,value\n";
    for (std::size_t j = 0; j < field.grid.n; ++j)
        out << format_double(field.grid.center(j)) << ',' << format_double(field.values[j])
            << '\n';
    if (!out) throw std::runtime_error("write failed for " + path);
}

TorusField read_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    std::vector<double> xs, values;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 2)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected two columns");
        xs.push_back(parse_double(cells[0], path, lineno));
        values.push_back(parse_double(cells[1], path, lineno));
    }
    const TorusGrid grid = make_grid(xs.size());  // validates power of two >= 8
    for (std::size_t j = 0; j < grid.n; ++j) {
        if (std::abs(xs[j] - grid.center(j)) > 1e-9)
            throw std::runtime_error(path + ": row " + std::to_string(j + 2) +
                                     " x does not match the cell center for n = " +
                                     std::to_string(grid.n));
    }
    return make_field(grid, std::move(values));
}

void write_table_csv(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows) {
    ensure_parent_dir(path);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << columns[c] << (c + 1 < columns.size() ? ',' : '\n');
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw std::invalid_argument("write_table_csv: ragged row");
        for (std::size_t c = 0; c < row.size(); ++c)
            out << format_double(row[c]) << (c + 1 < row.size() ? ',' : '\n');
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    ensure_parent_dir(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace burgerlab
