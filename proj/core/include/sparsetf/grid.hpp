// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#pragma once

#include <span>
#include <utility>
#include <vector>

namespace sparsetf {

/// Uniform sample grid on [t0, t1]. Periodic grids wrap at t1 (spacing
/// (t1-t0)/n, t1 identified with t0); non-periodic grids include both
/// endpoints (spacing (t1-t0)/(n-1)).
struct Grid {
  double t0 = 0.0;
  double t1 = 1.0;
  int n = 0;
  bool periodic = false;

  [[nodiscard]] double dt() const {
    return periodic ? (t1 - t0) / n : (t1 - t0) / (n - 1);
  }
  [[nodiscard]] double at(int i) const { return t0 + i * dt(); }
  [[nodiscard]] std::vector<double> times() const;
};

/// Real signal sampled on a uniform grid.
struct Signal {
  Grid grid;
  std::vector<double> values;
};

/// Scattered observations (t_i, f_i), strictly increasing times, with
/// optional open intervals declared as gaps.
struct SampledSignal {
  double t0 = 0.0;
  double t1 = 1.0;
  std::vector<double> times;
  std::vector<double> values;
  std::vector<std::pair<double, double>> gaps;
};

/// Validating constructor; throws InvalidInputError on n < 8, non-finite
/// values, or length mismatch.
Signal make_signal(Grid grid, std::vector<double> values);

/// Validating constructor for scattered samples. Checks strictly increasing
/// times inside [t0, t1] and that no sample falls inside a declared gap.
SampledSignal make_sampled_signal(double t0, double t1,
                                  std::vector<double> times,
                                  std::vector<double> values,
                                  std::vector<std::pair<double, double>> gaps = {});

/// Reflects a non-periodic signal about its end: [v0..vN-1] becomes
/// [v0..vN-1, vN-1..v0], flagged periodic with period 2N*dt.
Signal mirror_extend(const Signal& signal);

/// Even (mirror) extension of a per-sample field, same layout as
/// mirror_extend.
std::vector<double> mirror_extend_values(std::span<const double> values);

/// 10*log10(var(f)/sigma^2), variance taken over the sample.
double snr_db(const Signal& signal, double sigma);

double l2_norm(std::span<const double> v);

}  // namespace sparsetf
