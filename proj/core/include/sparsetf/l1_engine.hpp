// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#pragma once

#include <Eigen/Core>
#include <optional>
#include <span>
#include <vector>

#include "sparsetf/component.hpp"
#include "sparsetf/grid.hpp"
#include "sparsetf/phase.hpp"

namespace sparsetf {

/// minimize gamma*(||x||_1) + ||target - design*x||_2^2
struct L1Problem {
  Eigen::MatrixXd design;
  Eigen::VectorXd target;
  double gamma = 0.0;
};

struct L1SolverConfig {
  int max_iters = 5000;
  double rel_tol = 1e-8;
};

struct L1Solution {
  Eigen::VectorXd x;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_history;
};

/// Accelerated proximal gradient (FISTA) with soft-thresholding and a
/// monotone restart; the step comes from a power-method estimate of the
/// design operator norm.
L1Solution solve_l1_ls(const L1Problem& problem, const L1SolverConfig& config,
                       const Eigen::VectorXd* warm_start = nullptr);

struct L1EngineConfig {
  L1SolverConfig solver;
  double lambda_v = 0.5;
  double alpha = 0.1;
  double eta_max = 1.0;
  double eps0 = 1e-3;       // relative l2 change of theta
  int max_outer_iters = 150;
  int grid_n = 1024;        // reconstruction grid
  bool debias = true;       // support-restricted LS refit of the final fit
  bool record_history = false;
};

struct L1ExtractResult {
  IMFComponent component;  // on the reconstruction grid
  Grid grid;
  int iterations = 0;
  bool converged = false;
  std::vector<double> fitted_at_samples;  // model values at the input times
  std::vector<std::vector<double>> omega_history;
};

/// Gauss-Newton loop over the 2-fold overcomplete basis: assemble the
/// design at the sample times of the current phase, solve the l1 problem,
/// update the frequency on the reconstruction grid, repeat.
L1ExtractResult extract_imf_l1(const SampledSignal& samples,
                               const PhaseFunction& theta0, double gamma,
                               const L1EngineConfig& config);

struct GapRecovery {
  Signal reconstruction;  // full grid, gaps filled
  IMFComponent component;
  PhaseFunction phase;
};

/// Runs extract_imf_l1 on the available samples only and evaluates the
/// recovered component across the gaps. baseline, when given, is added to
/// the reconstruction (previously extracted components on the same grid).
/// Refuses gap fractions >= 50%.
GapRecovery recover_gapped(const SampledSignal& samples, const PhaseFunction& theta0,
                           double gamma, const L1EngineConfig& config,
                           std::span<const double> baseline = {});

struct SparseRecovery {
  Signal reconstruction;
  IMFComponent component;
};

/// Same pipeline for randomly placed samples (compressive regime); requires
/// at least 8 samples.
SparseRecovery recover_undersampled(const SampledSignal& samples,
                                    const PhaseFunction& theta0, double gamma,
                                    const L1EngineConfig& config, int grid_n);

}  // namespace sparsetf
