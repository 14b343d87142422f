// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "sparsetf/grid.hpp"
#include "sparsetf/phase.hpp"

namespace sparsetf {

/// Scale-separation analytics for a set of components ordered by increasing
/// mean frequency. epsilon_k = sup_t max(|a'_k/theta'_k|, |theta''_k/theta'_k^2|);
/// d = min over adjacent pairs and times of theta'_k/theta'_{k-1}. With fewer
/// than two components d is +infinity and ratio_profile is +infinity.
struct SeparationReport {
  std::vector<double> epsilon_per_component;
  double epsilon = 0.0;  // max over components
  double d = 0.0;
  std::vector<double> epsilon_profile;  // grid length
  std::vector<double> ratio_profile;    // grid length
};

SeparationReport separation_report(
    const std::vector<std::pair<std::vector<double>, PhaseFunction>>& components,
    const Grid& grid);

/// Compactly supported time-domain kernel phi, given as a callable on
/// [-half_width, half_width].
struct TimeKernel {
  std::function<double(double)> f;
  double half_width = 0.0;
};

struct ConvLemmaResult {
  double lhs = 0.0;    // sup_t |int a e^{-i theta} phi(.-t) - a(t) e^{-i theta(t)} phihat(theta'(t))|
  double bound = 0.0;  // sup|a'| I1 + (1/2) sup|a| sup|theta''| I2
  double quad_error = 0.0;  // Richardson-style quadrature error estimate
};

/// Numerically evaluates both sides of the envelope-demodulation estimate.
/// Throws InvalidKernelError if phi is not finite/integrable on its support.
ConvLemmaResult conv_lemma_residual(std::span<const double> a,
                                    const PhaseFunction& theta,
                                    const Grid& grid, const TimeKernel& phi);

}  // namespace sparsetf
