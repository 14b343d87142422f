// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#pragma once

#include <span>
#include <vector>

#include "sparsetf/component.hpp"
#include "sparsetf/filters.hpp"
#include "sparsetf/grid.hpp"
#include "sparsetf/phase.hpp"

namespace sparsetf {

// The paper-facing sign conventions, pinned by the calibration tests:
// b = kEnvelopeSignB * 2 Im{...} so that r = sin(theta) demodulates to b = +1,
// and omega steps by kPhaseUpdateSign * eta * delta_omega so that an update
// moves theta toward the true phase (the arctan form of the update).
inline constexpr double kEnvelopeSignB = -1.0;
inline constexpr double kPhaseUpdateSign = -1.0;

struct FftEngineConfig {
  FilterSpec filter{FilterKind::cosine, 0.5};
  double alpha = 0.1;       // envelope threshold on sqrt(a^2+b^2)
  double eta_max = 1.0;
  double eps0 = 1e-3;       // relative l2 change of omega
  int max_iters = 200;      // per continuation level
  // Widths of the low-pass filter applied to the frequency correction,
  // narrow to wide; empty means {w/8, w/4, w/2, w} with w = filter.width.
  std::vector<double> continuation_widths;
  bool polish = true;       // extra final level with unfiltered corrections
  bool record_history = false;
};

/// Envelope pair (a, b) of the fit a cos(theta) + b sin(theta).
struct EnvelopePair {
  std::vector<double> a;
  std::vector<double> b;
};

/// Resamples a periodic signal onto n_theta uniform points of the phase
/// coordinate spanning one record of theta. Ties in theta are nudged by a
/// machine-epsilon jitter. Throws on non-monotone theta or non-periodic
/// input.
std::vector<double> resample_to_theta(const Signal& r, const PhaseFunction& theta,
                                      int n_theta);

/// One demodulation/filter pass in the phase coordinate: chat(j) =
/// rhat(j + carrier_bin) * w(j/carrier_bin) for |j| < width*carrier_bin, then
/// a = 2 Re IDFT(chat), b = kEnvelopeSignB * 2 Im IDFT(chat). Throws
/// BandTooNarrowError when width*carrier_bin < 1.
EnvelopePair envelope_step(std::span<const double> r_theta, long carrier_bin,
                           const FilterSpec& filter);

/// Frequency correction (a b' - b a')/(a^2 + b^2) with sub-threshold points
/// filled by linear interpolation from valid neighbours. Throws
/// DegenerateEnvelopeError when every point is below alpha.
std::vector<double> phase_correction(const EnvelopePair& env, double dt,
                                     bool periodic, double alpha);

/// Largest step in [0, eta_max] keeping omega + eta*sign*delta nonnegative,
/// in closed form.
double frequency_step_limit(std::span<const double> omega,
                            std::span<const double> delta_omega, double eta_max);

struct PhaseUpdateResult {
  PhaseFunction phase;
  double eta = 0.0;
};

/// One monotone-preserving frequency update: omega <- omega +
/// kPhaseUpdateSign * eta * delta_omega, theta re-integrated from 0.
PhaseUpdateResult phase_update(const PhaseFunction& theta, const EnvelopePair& env,
                               const Grid& grid, const FftEngineConfig& config);

struct FftExtractResult {
  IMFComponent component;
  int iterations = 0;
  bool converged = false;
  // omega after each iteration, restricted to the original window
  // (record_history only)
  std::vector<std::vector<double>> omega_history;
  // 1-based iteration index at which each continuation level converged
  std::vector<int> level_end_iterations;
};

/// Full single-IMF extraction: iterate resample -> demodulate -> correct ->
/// update over the continuation schedule. Non-periodic signals are mirror
/// extended internally and the result restricted to the original window.
FftExtractResult extract_imf_fft(const Signal& signal, const PhaseFunction& theta0,
                                 const FftEngineConfig& config);

}  // namespace sparsetf
