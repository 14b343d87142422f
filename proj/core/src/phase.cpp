// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include "sparsetf/phase.hpp"

#include <cmath>
#include <numbers>

#include "sparsetf/errors.hpp"

namespace sparsetf {

long PhaseFunction::cycle_count() const {
  if (theta.empty()) return 0;
  const double cycles = (theta.back() - theta.front()) / (2.0 * std::numbers::pi);
  // tolerate integration rounding right at whole periods
  return static_cast<long>(std::floor(cycles + 1e-9));
}

PhaseFunction phase_from_frequency(std::span<const double> omega, double dt) {
  if (omega.size() < 2) throw InvalidInputError("phase_from_frequency: too few samples");
  if (!(dt > 0)) throw InvalidInputError("phase_from_frequency: dt must be positive");
  PhaseFunction p;
  p.omega.assign(omega.begin(), omega.end());
  p.theta.resize(omega.size());
  p.theta[0] = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (omega[i] < 0.0)
      throw InvalidInputError("phase_from_frequency: negative frequency (monotonicity violation)");
    if (i > 0) p.theta[i] = p.theta[i - 1] + 0.5 * (omega[i] + omega[i - 1]) * dt;
  }
  return p;
}

PhaseFunction phase_from_samples(std::span<const double> theta, double dt) {
  if (theta.size() < 2) throw InvalidInputError("phase_from_samples: too few samples");
  for (std::size_t i = 0; i + 1 < theta.size(); ++i) {
    if (theta[i + 1] < theta[i])
      throw InvalidInputError("phase_from_samples: theta must be nondecreasing");
  }
  PhaseFunction p;
  p.theta.assign(theta.begin(), theta.end());
  p.omega = derivative(theta, dt, false);
  for (double& w : p.omega) w = std::max(w, 0.0);  // clip centered-difference noise
  return p;
}

std::vector<double> derivative(std::span<const double> values, double dt, bool periodic) {
  const std::size_t n = values.size();
  std::vector<double> d(n);
  if (n < 2) throw InvalidInputError("derivative: too few samples");
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (values[i + 1] - values[i - 1]) / (2 * dt);
  if (periodic) {
    d[0] = (values[1] - values[n - 1]) / (2 * dt);
    d[n - 1] = (values[0] - values[n - 2]) / (2 * dt);
  } else {
    d[0] = (values[1] - values[0]) / dt;
    d[n - 1] = (values[n - 1] - values[n - 2]) / dt;
  }
  return d;
}

}  // namespace sparsetf
