#include "korteweg/snapshot.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "korteweg/errors.hpp"

namespace korteweg {

namespace {

constexpr const char* kHeader = "x,y,rho,u1,u2,w1,w2";

void put(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

void write_snapshot(std::ostream& os, const State& s) {
  const Grid2D& g = s.grid();
  os << kHeader << '\n';
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double r = s.rho(i, j);
      const double row[7] = {g.x(i),         g.y(j),         r,
                             s.mu.c1(i, j) / r, s.mu.c2(i, j) / r,
                             s.mw.c1(i, j) / r, s.mw.c2(i, j) / r};
      for (int c = 0; c < 7; ++c) {
        if (c) os << ',';
        put(os, row[c]);
      }
      os << '\n';
    }
  }
}

void write_snapshot(const std::filesystem::path& path, const State& s) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot open snapshot for writing: " + path.string());
  write_snapshot(os, s);
}

State read_snapshot(std::istream& is, const Grid2D& grid) {
  std::string line;
  if (!std::getline(is, line) || line != kHeader) {
    throw UsageError("snapshot header must be `" + std::string(kHeader) + "`");
  }
  State s(grid);
  const double tol_x = 1e-9 * grid.dx();
  const double tol_y = 1e-9 * grid.dy();
  std::size_t row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (row >= grid.size()) throw UsageError("snapshot has more rows than grid cells");
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        v.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw UsageError("snapshot row " + std::to_string(row + 2) + ": bad number `" + cell + "`");
      }
    }
    if (v.size() != 7) {
      throw UsageError("snapshot row " + std::to_string(row + 2) + ": expected 7 columns");
    }
    const int i = static_cast<int>(row % grid.nx());
    const int j = static_cast<int>(row / grid.nx());
    if (std::abs(v[0] - grid.x(i)) > tol_x || std::abs(v[1] - grid.y(j)) > tol_y) {
      throw UsageError("snapshot row " + std::to_string(row + 2) +
                       ": coordinates do not match the grid");
    }
    const double r = v[2];
    s.rho(i, j) = r;
    s.mu.c1(i, j) = r * v[3];
    s.mu.c2(i, j) = r * v[4];
    s.mw.c1(i, j) = r * v[5];
    s.mw.c2(i, j) = r * v[6];
    ++row;
  }
  if (row != grid.size()) {
    throw UsageError("snapshot has " + std::to_string(row) + " rows, grid needs " +
                     std::to_string(grid.size()));
  }
  return s;
}

State read_snapshot(const std::filesystem::path& path, const Grid2D& grid) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open snapshot: " + path.string());
  return read_snapshot(is, grid);
}

}  // namespace korteweg
