// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#pragma once

#include <Eigen/Core>
#include <span>

#include "sparsetf/grid.hpp"
#include "sparsetf/phase.hpp"

namespace sparsetf {

/// Number of columns of the 2-fold overcomplete basis: 1 + 2*floor(2*lambda_v*L).
int overcomplete_basis_columns(long cycles, double lambda_v);

/// Columns {1, cos(k*theta/(2L)), sin(k*theta/(2L))}, k = 1..floor(2*lambda_v*L),
/// evaluated at the given phase values. L = cycles of the full record.
Eigen::MatrixXd basis_at_phase(std::span<const double> theta, long cycles,
                               double lambda_v);

/// Same basis evaluated at theta(times), with theta interpolated from its
/// grid by cubic spline. Throws PhaseTooShortError when the record spans
/// less than one whole period.
Eigen::MatrixXd eval_overcomplete_basis(const PhaseFunction& theta,
                                        const Grid& grid, double lambda_v,
                                        std::span<const double> times);

}  // namespace sparsetf
