// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#pragma once

#include <optional>
#include <vector>

#include "sparsetf/component.hpp"
#include "sparsetf/fft_engine.hpp"
#include "sparsetf/grid.hpp"
#include "sparsetf/l1_engine.hpp"
#include "sparsetf/separation.hpp"

namespace sparsetf {

enum class EngineKind { fft, l1 };

struct PursuitConfig {
  EngineKind engine = EngineKind::fft;
  int max_imfs = 10;
  // Absolute residual l2 tolerance; unset means 1e-3 * ||f||_2 (noiseless
  // default). Pass the noise level for noisy data.
  std::optional<double> residual_tol;
  double min_residual_reduction = 0.99;  // stall guard rho
  bool trend_extraction = false;
  int exclude_below = 2;          // spectral bins skipped by the initial guess
  double peak_floor_ratio = 3.0;  // peak must exceed ratio * median magnitude
  // l1 regularization weight; negative means the engine default (0 for fft,
  // 1 for l1).
  double gamma = -1.0;
  FftEngineConfig fft;
  L1EngineConfig l1;
};

struct ComponentDiagnostics {
  int iterations = 0;
  bool converged = false;
  int guess_bin = 0;
  double mean_omega = 0.0;
  double residual_norm_after = 0.0;
};

struct Decomposition {
  Grid grid;
  std::vector<IMFComponent> components;  // ordered by decreasing mean omega
  std::vector<double> residual;          // on the grid (uniform input)
  std::optional<std::vector<double>> trend;
  std::vector<ComponentDiagnostics> diagnostics;
  std::optional<SeparationReport> separation;
  // Scattered input only: exact residual at the sample times.
  std::vector<double> sample_times;
  std::vector<double> sample_residual;
};

/// Linear phase 2 pi k* (t - t0)/(t1 - t0) from the dominant DFT bin above
/// exclude_below. Throws NoOscillationError when no bin beats the floor.
PhaseFunction initial_phase_guess(const Signal& signal, int exclude_below = 2,
                                  double peak_floor_ratio = 3.0);

/// Scattered-sample variant using a nonuniform-DFT periodogram over integer
/// wavenumbers (up to max_bin; 0 means 4x the sample count). The returned
/// phase lives on a uniform grid_n grid.
PhaseFunction initial_phase_guess(const SampledSignal& samples, int grid_n,
                                  int exclude_below = 2,
                                  double peak_floor_ratio = 3.0, int max_bin = 0);

/// Greedy pursuit: guess a phase on the residual, extract one IMF, subtract,
/// repeat until the residual tolerance, the stall guard, or max_imfs stops
/// it. Engine failures are recorded in diagnostics, never thrown.
Decomposition decompose(const Signal& signal, const PursuitConfig& config);

/// Scattered input; requires engine == l1.
Decomposition decompose(const SampledSignal& samples, const PursuitConfig& config);

struct TruthComponent {
  std::vector<double> envelope;
  PhaseFunction phase;
};

struct ComponentErrors {
  int truth_index = -1;
  int decomp_index = -1;
  double recon_rel_l2_full = 0.0;
  double recon_rel_l2_interior = 0.0;
  double omega_rel_sup_full = 0.0;
  double omega_rel_sup_interior = 0.0;
  double omega_rel_l2_full = 0.0;
  double omega_rel_l2_interior = 0.0;
};

struct EvaluationReport {
  std::vector<ComponentErrors> matched;  // greedy pairing by mean frequency
  int unmatched_truth = 0;
  int unmatched_decomposition = 0;
};

/// Deterministic greedy matching by mean frequency; interior metrics cover
/// the central 80% of the grid. Count mismatches are reported, not fatal.
EvaluationReport evaluate_against_truth(const Decomposition& decomposition,
                                        const std::vector<TruthComponent>& truth);

}  // namespace sparsetf
