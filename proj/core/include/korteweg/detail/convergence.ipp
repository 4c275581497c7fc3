#pragma once

#include <cmath>

namespace korteweg {

template <class ResidualFn>
std::vector<ConvergenceRow> convergence_study(std::span<const int> sizes, double Lx, double Ly,
                                              ResidualFn residual) {
  std::vector<ConvergenceRow> rows;
  rows.reserve(sizes.size());
  for (int n : sizes) {
    ConvergenceRow row;
    row.n = n;
    row.residual_rel = residual(Grid2D(n, n, Lx, Ly));
    if (!rows.empty()) {
      const ConvergenceRow& prev = rows.back();
      row.observed_order = std::log(prev.residual_rel / row.residual_rel) /
                           std::log(static_cast<double>(n) / prev.n);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace korteweg
