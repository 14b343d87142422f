// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#pragma once

#include <span>
#include <vector>

namespace sparsetf {

enum class InterpMethod { cubic_spline, linear };

/// Natural cubic spline over strictly increasing nodes. Queries outside the
/// node range are clamped to the boundary value.
class CubicSpline {
 public:
  CubicSpline(std::span<const double> nodes, std::span<const double> values);
  [[nodiscard]] double operator()(double x) const;

 private:
  std::vector<double> x_, y_, m_;  // m_ holds second derivatives
};

/// Interpolates (nodes, values) at the query points. Exact at nodes; the
/// cubic path is C^2 with natural boundary conditions. Throws
/// InvalidInputError for fewer than 2 nodes (4 for cubic) or non-increasing
/// nodes.
std::vector<double> interpolate(std::span<const double> nodes,
                                std::span<const double> values,
                                std::span<const double> queries,
                                InterpMethod method = InterpMethod::cubic_spline);

}  // namespace sparsetf
