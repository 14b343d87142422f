// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#pragma once

#include <span>
#include <vector>

#include "sparsetf/grid.hpp"

namespace sparsetf {

/// Monotone nondecreasing phase samples with the matching instantaneous
/// frequency theta'(t) >= 0 on the same grid.
struct PhaseFunction {
  std::vector<double> theta;
  std::vector<double> omega;

  [[nodiscard]] int size() const { return static_cast<int>(theta.size()); }
  /// Whole periods spanned by the stored samples, floor((theta_N - theta_0)/2pi).
  [[nodiscard]] long cycle_count() const;
};

/// Cumulative trapezoidal integral of omega with theta(t0) = 0. Throws on
/// any negative omega (monotonicity violation).
PhaseFunction phase_from_frequency(std::span<const double> omega, double dt);

/// Builds a PhaseFunction from phase samples, deriving omega by centered
/// differences (one-sided at the ends). Throws if theta decreases.
PhaseFunction phase_from_samples(std::span<const double> theta, double dt);

/// Centered-difference derivative, one-sided at the ends; periodic grids
/// wrap.
std::vector<double> derivative(std::span<const double> values, double dt,
                               bool periodic = false);

}  // namespace sparsetf
