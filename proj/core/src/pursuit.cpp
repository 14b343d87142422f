// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include "sparsetf/pursuit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "sparsetf/dft.hpp"
#include "sparsetf/errors.hpp"
#include "sparsetf/interpolate.hpp"

namespace sparsetf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct PeakPick {
  int bin = 0;
  double magnitude = 0.0;
};

PeakPick dominant_bin(const Signal& signal, int exclude_below, double floor_ratio) {
  const auto spectrum = dft_forward(signal.values);
  const int half = static_cast<int>(spectrum.size()) / 2;
  std::vector<double> mags;
  mags.reserve(static_cast<std::size_t>(half));
  for (int k = 1; k < half; ++k) mags.push_back(std::abs(spectrum[static_cast<std::size_t>(k)]));

  PeakPick pick;
  for (int k = exclude_below + 1; k < half; ++k) {
    const double m = std::abs(spectrum[static_cast<std::size_t>(k)]);
    if (m > pick.magnitude) {
      pick.magnitude = m;
      pick.bin = k;
    }
  }
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
  const double median = mags[mags.size() / 2];
  if (pick.bin == 0 || pick.magnitude <= floor_ratio * median)
    throw NoOscillationError("initial_phase_guess: no spectral peak above the floor");
  return pick;
}

PeakPick dominant_bin_scattered(const SampledSignal& samples, int exclude_below,
                                double floor_ratio, int max_bin) {
  const double t0 = samples.t0;
  const double span = samples.t1 - samples.t0;
  const int n = static_cast<int>(samples.times.size());
  if (max_bin <= 0) max_bin = 4 * n;
  const double mean =
      std::accumulate(samples.values.begin(), samples.values.end(), 0.0) / n;

  std::vector<double> mags;
  mags.reserve(static_cast<std::size_t>(max_bin));
  PeakPick pick;
  for (int k = 1; k <= max_bin; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      const double ph = -kTwoPi * k * (samples.times[static_cast<std::size_t>(i)] - t0) / span;
      acc += (samples.values[static_cast<std::size_t>(i)] - mean) *
             std::complex<double>(std::cos(ph), std::sin(ph));
    }
    const double m = std::abs(acc);
    mags.push_back(m);
    if (k > exclude_below && m > pick.magnitude) {
      pick.magnitude = m;
      pick.bin = k;
    }
  }
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
  const double median = mags[mags.size() / 2];
  if (pick.bin == 0 || pick.magnitude <= floor_ratio * median)
    throw NoOscillationError("initial_phase_guess: no spectral peak above the floor");
  return pick;
}

PhaseFunction linear_phase(int bin, double t0, double t1, int n, double dt) {
  const double omega = kTwoPi * bin / (t1 - t0);
  std::vector<double> w(static_cast<std::size_t>(n), omega);
  (void)t0;
  return phase_from_frequency(w, dt);
}

// Low-pass by zeroing DFT bins above the cutoff; non-periodic input is
// mirror extended first (cutoff doubles with the record).
std::vector<double> lowpass_bins(const Signal& signal, int cutoff_bins) {
  const bool periodic = signal.grid.periodic;
  std::vector<double> values =
      periodic ? signal.values : mirror_extend_values(signal.values);
  const int cutoff = periodic ? cutoff_bins : 2 * cutoff_bins;
  auto spectrum = dft_forward(values);
  const int m = static_cast<int>(spectrum.size());
  for (int k = 0; k < m; ++k) {
    const int signed_k = (k <= m / 2) ? k : k - m;
    if (std::abs(signed_k) > cutoff) spectrum[static_cast<std::size_t>(k)] = 0.0;
  }
  const auto smooth = dft_inverse(spectrum);
  std::vector<double> out(signal.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = smooth[i].real();
  return out;
}

double engine_lambda(const PursuitConfig& config) {
  return config.engine == EngineKind::fft ? config.fft.filter.width : config.l1.lambda_v;
}

void sort_by_frequency(Decomposition* d) {
  std::vector<std::size_t> order(d->components.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return d->diagnostics[i].mean_omega > d->diagnostics[j].mean_omega;
  });
  std::vector<IMFComponent> comps;
  std::vector<ComponentDiagnostics> diags;
  for (std::size_t i : order) {
    comps.push_back(std::move(d->components[i]));
    diags.push_back(d->diagnostics[i]);
  }
  d->components = std::move(comps);
  d->diagnostics = std::move(diags);
}

void attach_separation(Decomposition* d) {
  if (d->components.empty()) return;
  std::vector<std::pair<std::vector<double>, PhaseFunction>> comps;
  for (auto it = d->components.rbegin(); it != d->components.rend(); ++it) {
    for (double w : it->phase.omega) {
      if (!(w > 0.0)) return;  // report only when defined
    }
    comps.emplace_back(it->envelope, it->phase);
  }
  d->separation = separation_report(comps, d->grid);
}

int trend_cutoff(const Decomposition& d) {
  double min_omega = std::numeric_limits<double>::infinity();
  for (const auto& c : d.components) {
    for (double w : c.phase.omega) min_omega = std::min(min_omega, w);
  }
  const double span = d.grid.t1 - d.grid.t0;
  const double min_cycles = min_omega * span / kTwoPi;
  return std::max(3, static_cast<int>(std::floor(min_cycles / 2.0)));
}

}  // namespace

PhaseFunction initial_phase_guess(const Signal& signal, int exclude_below,
                                  double peak_floor_ratio) {
  if (signal.grid.n < 16) throw InvalidInputError("initial_phase_guess: need at least 16 samples");
  const auto pick = dominant_bin(signal, exclude_below, peak_floor_ratio);
  return linear_phase(pick.bin, signal.grid.t0, signal.grid.t1, signal.grid.n,
                      signal.grid.dt());
}

PhaseFunction initial_phase_guess(const SampledSignal& samples, int grid_n,
                                  int exclude_below, double peak_floor_ratio,
                                  int max_bin) {
  const auto pick = dominant_bin_scattered(samples, exclude_below, peak_floor_ratio, max_bin);
  const Grid grid{samples.t0, samples.t1, grid_n, false};
  return linear_phase(pick.bin, grid.t0, grid.t1, grid.n, grid.dt());
}

Decomposition decompose(const Signal& signal, const PursuitConfig& config) {
  Decomposition out;
  out.grid = signal.grid;
  out.residual = signal.values;

  const double delta = config.residual_tol.value_or(1e-3 * l2_norm(signal.values));
  const double lambda = engine_lambda(config);
  const double gamma = config.gamma >= 0.0
                           ? config.gamma
                           : (config.engine == EngineKind::l1 ? 1.0 : 0.0);

  double residual_norm = l2_norm(out.residual);
  for (int m = 0; m < config.max_imfs && residual_norm > delta; ++m) {
    Signal r = make_signal(signal.grid, out.residual);
    PhaseFunction guess;
    int bin = 0;
    try {
      const auto pick = dominant_bin(r, config.exclude_below, config.peak_floor_ratio);
      bin = pick.bin;
      // A peak whose passband would reach into the excluded trend bins is
      // trend content, not an IMF.
      if (bin * (1.0 - lambda) <= static_cast<double>(config.exclude_below)) break;
      guess = linear_phase(bin, r.grid.t0, r.grid.t1, r.grid.n, r.grid.dt());
    } catch (const NoOscillationError&) {
      break;
    }

    IMFComponent component;
    int iterations = 0;
    bool converged = false;
    if (config.engine == EngineKind::fft) {
      auto res = extract_imf_fft(r, guess, config.fft);
      component = std::move(res.component);
      iterations = res.iterations;
      converged = res.converged;
    } else {
      SampledSignal as_samples;
      as_samples.t0 = r.grid.t0;
      as_samples.t1 = r.grid.t1;
      as_samples.times = r.grid.times();
      as_samples.values = r.values;
      L1EngineConfig cfg = config.l1;
      auto res = extract_imf_l1(as_samples, guess, gamma, cfg);
      // the l1 grid matches the guess grid, which is the signal grid
      component = std::move(res.component);
      iterations = res.iterations;
      converged = res.converged;
    }

    std::vector<double> next(out.residual.size());
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = out.residual[i] - component.reconstruction[i];
    const double next_norm = l2_norm(next);
    if (next_norm > config.min_residual_reduction * residual_norm) break;  // stall: discard

    ComponentDiagnostics diag;
    diag.iterations = iterations;
    diag.converged = converged;
    diag.guess_bin = bin;
    diag.mean_omega = mean_omega(component);
    diag.residual_norm_after = next_norm;
    out.components.push_back(std::move(component));
    out.diagnostics.push_back(diag);
    out.residual = std::move(next);
    residual_norm = next_norm;
  }

  if (config.trend_extraction && !out.components.empty()) {
    const Signal res_sig = make_signal(signal.grid, out.residual);
    auto trend = lowpass_bins(res_sig, trend_cutoff(out));
    for (std::size_t i = 0; i < out.residual.size(); ++i) out.residual[i] -= trend[i];
    out.trend = std::move(trend);
  }

  sort_by_frequency(&out);
  attach_separation(&out);
  return out;
}

Decomposition decompose(const SampledSignal& samples, const PursuitConfig& config) {
  if (config.engine != EngineKind::l1)
    throw InvalidInputError("decompose: scattered samples require the l1 engine");

  Decomposition out;
  out.grid = Grid{samples.t0, samples.t1, config.l1.grid_n, false};
  out.sample_times = samples.times;
  out.sample_residual = samples.values;

  const double gamma = config.gamma >= 0.0 ? config.gamma : 1.0;
  const double delta = config.residual_tol.value_or(1e-3 * l2_norm(samples.values));

  double residual_norm = l2_norm(out.sample_residual);
  std::vector<double> grid_sum(static_cast<std::size_t>(out.grid.n), 0.0);
  for (int m = 0; m < config.max_imfs && residual_norm > delta; ++m) {
    SampledSignal r = samples;
    r.values = out.sample_residual;
    PhaseFunction guess;
    int bin = 0;
    try {
      const auto pick = dominant_bin_scattered(r, config.exclude_below,
                                               config.peak_floor_ratio, 0);
      bin = pick.bin;
      if (bin * (1.0 - config.l1.lambda_v) <= static_cast<double>(config.exclude_below)) break;
      guess = linear_phase(bin, out.grid.t0, out.grid.t1, out.grid.n, out.grid.dt());
    } catch (const NoOscillationError&) {
      break;
    }

    auto res = extract_imf_l1(r, guess, gamma, config.l1);
    std::vector<double> next(out.sample_residual.size());
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = out.sample_residual[i] - res.fitted_at_samples[i];
    const double next_norm = l2_norm(next);
    if (next_norm > config.min_residual_reduction * residual_norm) break;

    ComponentDiagnostics diag;
    diag.iterations = res.iterations;
    diag.converged = res.converged;
    diag.guess_bin = bin;
    diag.mean_omega = mean_omega(res.component);
    diag.residual_norm_after = next_norm;
    for (std::size_t i = 0; i < grid_sum.size(); ++i)
      grid_sum[i] += res.component.reconstruction[i];
    out.components.push_back(std::move(res.component));
    out.diagnostics.push_back(diag);
    out.sample_residual = std::move(next);
    residual_norm = next_norm;
  }

  // Grid-domain residual is a diagnostic for scattered input: the exact
  // residual lives at the sample times.
  out.residual = interpolate(samples.times, out.sample_residual,
                             out.grid.times(), InterpMethod::linear);

  sort_by_frequency(&out);
  attach_separation(&out);
  return out;
}

EvaluationReport evaluate_against_truth(const Decomposition& decomposition,
                                        const std::vector<TruthComponent>& truth) {
  for (const auto& t : truth) {
    if (static_cast<int>(t.envelope.size()) != decomposition.grid.n)
      throw InvalidInputError("evaluate_against_truth: truth grid mismatch");
  }

  const int n = decomposition.grid.n;
  const int lo = n / 10, hi = n - n / 10;

  auto rel_l2 = [&](std::span<const double> got, std::span<const double> want, int a, int b) {
    double num = 0, den = 0;
    for (int i = a; i < b; ++i) {
      const double d = got[static_cast<std::size_t>(i)] - want[static_cast<std::size_t>(i)];
      num += d * d;
      den += want[static_cast<std::size_t>(i)] * want[static_cast<std::size_t>(i)];
    }
    return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
  };
  auto rel_sup = [&](std::span<const double> got, std::span<const double> want, int a, int b) {
    double sup = 0;
    for (int i = a; i < b; ++i) {
      const double w = want[static_cast<std::size_t>(i)];
      if (w != 0.0)
        sup = std::max(sup, std::abs(got[static_cast<std::size_t>(i)] - w) / std::abs(w));
    }
    return sup;
  };

  std::vector<std::size_t> truth_order(truth.size());
  std::iota(truth_order.begin(), truth_order.end(), 0);
  auto truth_mean = [&](std::size_t i) {
    const auto& w = truth[i].phase.omega;
    return std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
  };
  std::stable_sort(truth_order.begin(), truth_order.end(),
                   [&](std::size_t a, std::size_t b) { return truth_mean(a) > truth_mean(b); });

  EvaluationReport report;
  std::vector<bool> used(decomposition.components.size(), false);
  for (std::size_t ti : truth_order) {
    const double target = truth_mean(ti);
    int best = -1;
    double best_diff = std::numeric_limits<double>::infinity();
    for (std::size_t di = 0; di < decomposition.components.size(); ++di) {
      if (used[di]) continue;
      const double diff = std::abs(decomposition.diagnostics[di].mean_omega - target);
      if (diff < best_diff) {
        best_diff = diff;
        best = static_cast<int>(di);
      }
    }
    if (best < 0) {
      ++report.unmatched_truth;
      continue;
    }
    used[static_cast<std::size_t>(best)] = true;
    const auto& d = decomposition.components[static_cast<std::size_t>(best)];
    const auto& t = truth[ti];
    std::vector<double> truth_recon(t.envelope.size());
    for (std::size_t i = 0; i < truth_recon.size(); ++i)
      truth_recon[i] = t.envelope[i] * std::cos(t.phase.theta[i]);

    ComponentErrors e;
    e.truth_index = static_cast<int>(ti);
    e.decomp_index = best;
    e.recon_rel_l2_full = rel_l2(d.reconstruction, truth_recon, 0, n);
    e.recon_rel_l2_interior = rel_l2(d.reconstruction, truth_recon, lo, hi);
    e.omega_rel_sup_full = rel_sup(d.phase.omega, t.phase.omega, 0, n);
    e.omega_rel_sup_interior = rel_sup(d.phase.omega, t.phase.omega, lo, hi);
    e.omega_rel_l2_full = rel_l2(d.phase.omega, t.phase.omega, 0, n);
    e.omega_rel_l2_interior = rel_l2(d.phase.omega, t.phase.omega, lo, hi);
    report.matched.push_back(e);
  }
  report.unmatched_decomposition =
      static_cast<int>(decomposition.components.size()) -
      static_cast<int>(std::count(used.begin(), used.end(), true));
  return report;
}

}  // namespace sparsetf
