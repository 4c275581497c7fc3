#pragma once

#include <filesystem>
#include <iosfwd>

#include "korteweg/grid.hpp"

namespace korteweg {

// Snapshot CSV: header `x,y,rho,u1,u2,w1,w2`, one row per cell, j-major then
// i, every number printed with 17 significant digits.

void write_snapshot(std::ostream& os, const State& s);
void write_snapshot(const std::filesystem::path& path, const State& s);

/// Reads a snapshot written on `grid`. Throws UsageError on a malformed file
/// or when the cell coordinates do not match the grid.
State read_snapshot(std::istream& is, const Grid2D& grid);
State read_snapshot(const std::filesystem::path& path, const Grid2D& grid);

}  // namespace korteweg
