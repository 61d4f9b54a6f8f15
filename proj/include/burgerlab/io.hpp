#pragma once

#include <string>
#include <vector>

#include "burgerlab/grid.hpp"

namespace burgerlab {

/// Shortest round-trippable decimal form of v (printf %.17g trimmed).
std::string format_double(double v);

/// Create the directory (and parents) holding `path`, if any.
void ensure_parent_dir(const std::string& path);

/// Field snapshot as CSV with header "x,value"; x is the cell center.
void write_field_csv(const std::string& path, const TorusField& field);

/// Inverse of write_field_csv. Validates the count (power of two >= 8) and
/// that the x column matches the cell centers of that grid within 1e-9.
TorusField read_field_csv(const std::string& path);

/// Numeric table as CSV: one header row, then format_double cells.
void write_table_csv(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows);

/// Whole file as a string (throws on failure to open).
std::string read_text_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace burgerlab
