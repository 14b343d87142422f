// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include "sparsetf/filters.hpp"

#include <cmath>
#include <numbers>

namespace sparsetf {

double filter_weight(const FilterSpec& spec, double kappa) {
  const double k = std::abs(kappa);
  if (k >= spec.width) return 0.0;
  if (spec.kind == FilterKind::stair) return 1.0;
  return 0.5 * (1.0 + std::cos(std::numbers::pi * k / spec.width));
}

}  // namespace sparsetf
