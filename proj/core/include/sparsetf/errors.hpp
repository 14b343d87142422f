// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#pragma once

#include <stdexcept>
#include <string>

namespace sparsetf {

/// Precondition or argument violations (bad grids, non-increasing nodes, ...).
struct InvalidInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Phase record spans fewer whole periods than an operation requires.
struct PhaseTooShortError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};

/// Filter passband too narrow for the carrier (lambda_V * L < 1).
struct BandTooNarrowError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};

/// Demodulated envelope below the alpha threshold everywhere.
struct DegenerateEnvelopeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Spectrum has no peak above the configured floor.
struct NoOscillationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Kernel is not integrable (or not finite) on its support.
struct InvalidKernelError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};

/// Component violates theta' > 0.
struct InvalidComponentError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};

}  // namespace sparsetf
