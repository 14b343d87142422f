// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#pragma once

namespace sparsetf {

enum class FilterKind { stair, cosine };

/// Low-pass filter profile in normalized wavenumber (fraction of the carrier
/// frequency). width = lambda_V in (0, 1/2].
struct FilterSpec {
  FilterKind kind = FilterKind::cosine;
  double width = 0.5;
};

/// Filter weight at normalized wavenumber kappa. Symmetric, w(0) = 1, zero
/// for |kappa| >= width. The cosine kind is (1 + cos(pi*kappa/width))/2.
double filter_weight(const FilterSpec& spec, double kappa);

}  // namespace sparsetf
