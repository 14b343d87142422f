// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#pragma once

#include <complex>
#include <span>
#include <vector>

namespace sparsetf {

/// Forward DFT, normalized by 1/N: X_k = (1/N) sum_j x_j e^{-2
/// pi i jk/N}.
std::vector<std::complex<double>> dft_forward(std::span<const double> x);
std::vector<std::complex<double>> dft_forward(std::span<const std::complex<double>> x);

/// Unnormalized inverse: x_j = sum_k X_k e^{+2 pi i jk/N}. Round-trips with
/// dft_forward.
std::vector<std::complex<double>> dft_inverse(std::span<const std::complex<double>> x);

}  // namespace sparsetf
