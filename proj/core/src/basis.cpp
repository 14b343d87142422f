// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include "sparsetf/basis.hpp"

#include <cmath>

#include "sparsetf/errors.hpp"
#include "sparsetf/interpolate.hpp"

namespace sparsetf {

int overcomplete_basis_columns(long cycles, double lambda_v) {
  return 1 + 2 * static_cast<int>(std::floor(2.0 * lambda_v * static_cast<double>(cycles)));
}

Eigen::MatrixXd basis_at_phase(std::span<const double> theta, long cycles,
                               double lambda_v) {
  if (cycles < 1) throw PhaseTooShortError("basis: record spans less than one period");
  const int kmax = static_cast<int>(std::floor(2.0 * lambda_v * static_cast<double>(cycles)));
  const auto rows = static_cast<Eigen::Index>(theta.size());
  Eigen::MatrixXd m(rows, 1 + 2 * kmax);
  const double half_l = 2.0 * static_cast<double>(cycles);
  for (Eigen::Index i = 0; i < rows; ++i) {
    m(i, 0) = 1.0;
    const double base = theta[static_cast<std::size_t>(i)] / half_l;
    for (int k = 1; k <= kmax; ++k) {
      m(i, 2 * k - 1) = std::cos(k * base);
      m(i, 2 * k) = std::sin(k * base);
    }
  }
  return m;
}

Eigen::MatrixXd eval_overcomplete_basis(const PhaseFunction& theta, const Grid& grid,
                                        double lambda_v, std::span<const double> times) {
  const long cycles = theta.cycle_count();
  if (cycles < 1) throw PhaseTooShortError("basis: record spans less than one period");
  const auto grid_times = grid.times();
  const auto theta_at = interpolate(grid_times, theta.theta, times);
  return basis_at_phase(theta_at, cycles, lambda_v);
}

}  // namespace sparsetf
