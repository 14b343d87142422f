// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#pragma once

#include <vector>

#include "sparsetf/phase.hpp"

namespace sparsetf {

/// One intrinsic mode: envelope a(t), monotone phase theta(t), and the
/// pointwise product a(t)cos(theta(t)).
struct IMFComponent {
  std::vector<double> envelope;
  PhaseFunction phase;
  std::vector<double> reconstruction;
};

/// Builds the component with reconstruction[i] = envelope[i]*cos(theta[i])
/// exactly.
IMFComponent make_imf_component(std::vector<double> envelope, PhaseFunction phase);

double mean_omega(const IMFComponent& component);

}  // namespace sparsetf
