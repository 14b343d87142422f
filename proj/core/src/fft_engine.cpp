// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include "sparsetf/fft_engine.hpp"

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

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Record span of a periodic grid in phase units; the trapezoid wrap step
// makes this exactly dt * sum(omega).
double record_span(std::span<const double> omega, double dt) {
  return dt * std::accumulate(omega.begin(), omega.end(), 0.0);
}

// Cubic spline over one periodic record, padded with wrapped nodes so the
// seam is interpolated smoothly.
class PeriodicSpline {
 public:
  PeriodicSpline(std::span<const double> nodes, std::span<const double> values, double span)
      : spline_(pad_nodes(nodes, span), pad_values(values)) {}

  double operator()(double x) const { return spline_(x); }

 private:
  static constexpr int kPad = 4;

  static std::vector<double> pad_nodes(std::span<const double> nodes, double span) {
    std::vector<double> out;
    out.reserve(nodes.size() + 2 * kPad);
    const std::size_t n = nodes.size();
    for (int i = kPad; i >= 1; --i) out.push_back(nodes[n - static_cast<std::size_t>(i)] - span);
    out.insert(out.end(), nodes.begin(), nodes.end());
    for (int i = 0; i < kPad; ++i) out.push_back(nodes[static_cast<std::size_t>(i)] + span);
    return out;
  }

  static std::vector<double> pad_values(std::span<const double> values) {
    std::vector<double> out;
    out.reserve(values.size() + 2 * kPad);
    const std::size_t n = values.size();
    for (int i = kPad; i >= 1; --i) out.push_back(values[n - static_cast<std::size_t>(i)]);
    out.insert(out.end(), values.begin(), values.end());
    for (int i = 0; i < kPad; ++i) out.push_back(values[static_cast<std::size_t>(i)]);
    return out;
  }

  CubicSpline spline_;
};

std::vector<double> strictly_increasing(std::span<const double> theta) {
  std::vector<double> out(theta.begin(), theta.end());
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double floor_v =
        out[i - 1] + std::abs(out[i - 1]) * std::numeric_limits<double>::epsilon() +
        std::numeric_limits<double>::min();
    if (out[i] <= floor_v) out[i] = floor_v;
  }
  return out;
}

// Low-pass a per-sample field in the phase coordinate: resample to the
// uniform theta grid, scale DFT bins by w(k/L), resample back.
std::vector<double> lowpass_in_theta(std::span<const double> values,
                                     std::span<const double> theta, double span,
                                     long carrier_bin, const FilterSpec& filter,
                                     int n_theta) {
  const auto nodes = strictly_increasing(theta);
  const PeriodicSpline to_theta(nodes, values, span);
  std::vector<std::complex<double>> on_grid(static_cast<std::size_t>(n_theta));
  for (int j = 0; j < n_theta; ++j)
    on_grid[static_cast<std::size_t>(j)] = to_theta(nodes[0] + span * j / n_theta);

  auto spectrum = dft_forward(on_grid);
  const double l = static_cast<double>(carrier_bin);
  for (int k = 0; k < n_theta; ++k) {
    const int signed_k = (k <= n_theta / 2) ? k : k - n_theta;
    spectrum[static_cast<std::size_t>(k)] *= filter_weight(filter, signed_k / l);
  }
  const auto filtered = dft_inverse(spectrum);

  std::vector<double> grid_times(static_cast<std::size_t>(n_theta));
  std::vector<double> grid_vals(static_cast<std::size_t>(n_theta));
  for (int j = 0; j < n_theta; ++j) {
    grid_times[static_cast<std::size_t>(j)] = nodes[0] + span * j / n_theta;
    grid_vals[static_cast<std::size_t>(j)] = filtered[static_cast<std::size_t>(j)].real();
  }
  const PeriodicSpline back(grid_times, grid_vals, span);
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = back(nodes[i]);
  return out;
}

struct DemodulatedEnvelopes {
  std::vector<double> a, b;  // on the t-grid
};

DemodulatedEnvelopes demodulate(const Signal& work, std::span<const double> theta,
                                double span, long carrier_bin, const FilterSpec& filter,
                                int n_theta) {
  const auto nodes = strictly_increasing(theta);
  const PeriodicSpline to_theta(nodes, work.values, span);
  std::vector<double> r_theta(static_cast<std::size_t>(n_theta));
  for (int j = 0; j < n_theta; ++j)
    r_theta[static_cast<std::size_t>(j)] = to_theta(nodes[0] + span * j / n_theta);
  const auto env = envelope_step(r_theta, carrier_bin, filter);

  std::vector<double> grid(static_cast<std::size_t>(n_theta));
  for (int j = 0; j < n_theta; ++j)
    grid[static_cast<std::size_t>(j)] = theta[0] + span * j / n_theta;
  const PeriodicSpline a_s(grid, env.a, span);
  const PeriodicSpline b_s(grid, env.b, span);
  DemodulatedEnvelopes out;
  out.a.resize(theta.size());
  out.b.resize(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    out.a[i] = a_s(theta[i]);
    out.b[i] = b_s(theta[i]);
  }
  return out;
}

std::vector<double> fill_invalid(std::vector<double> v, const std::vector<bool>& valid,
                                 bool periodic) {
  const auto n = v.size();
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (valid[i]) idx.push_back(i);
  if (idx.empty()) throw DegenerateEnvelopeError("phase_correction: envelope below threshold everywhere");
  if (idx.size() == n) return v;
  for (std::size_t i = 0; i < n; ++i) {
    if (valid[i]) continue;
    // previous/next valid index, wrapping when periodic
    auto next_it = std::lower_bound(idx.begin(), idx.end(), i);
    std::size_t prev, next;
    double dist_prev, dist_next;
    if (next_it == idx.end()) {
      next = periodic ? idx.front() : idx.back();
      dist_next = periodic ? static_cast<double>(n - i + next) : 0.0;
    } else {
      next = *next_it;
      dist_next = static_cast<double>(next - i);
    }
    if (next_it == idx.begin()) {
      prev = periodic ? idx.back() : idx.front();
      dist_prev = periodic ? static_cast<double>(i + n - prev) : 0.0;
    } else {
      prev = *(next_it - 1);
      dist_prev = static_cast<double>(i - prev);
    }
    if (!periodic && next_it == idx.end()) {
      v[i] = v[prev];  // constant extrapolation past the last valid point
    } else if (!periodic && next_it == idx.begin()) {
      v[i] = v[next];
    } else {
      const double w = dist_prev / (dist_prev + dist_next);
      v[i] = (1.0 - w) * v[prev] + w * v[next];
    }
  }
  return v;
}

struct FoldResult {
  std::vector<double> envelope;
  std::vector<double> theta;
  double span = 0.0;
};

// Absorbs the residual quadrature component: a cos(th) + b sin(th) =
// A cos(th + phi) with A = hypot(a, b), phi = atan2(-b, a) unwrapped.
FoldResult fold_quadrature(std::span<const double> theta, double span,
                           const DemodulatedEnvelopes& env) {
  const std::size_t n = theta.size();
  FoldResult out;
  out.envelope.resize(n);
  out.theta.resize(n);
  double prev_phi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.envelope[i] = std::hypot(env.a[i], env.b[i]);
    double phi = std::atan2(-env.b[i], env.a[i]);
    if (i > 0) phi += kTwoPi * std::round((prev_phi - phi) / kTwoPi);
    prev_phi = phi;
    out.theta[i] = theta[i] + phi;
  }
  // net phi drift over one record is a whole number of turns
  const double first_phi = out.theta[0] - theta[0];
  const double drift = kTwoPi * std::round((prev_phi - first_phi) / kTwoPi);
  out.span = span + drift;
  for (std::size_t i = 1; i < n; ++i) out.theta[i] = std::max(out.theta[i], out.theta[i - 1]);
  return out;
}

std::vector<double> wrap_derivative(std::span<const double> theta, double dt, double span) {
  const std::size_t n = theta.size();
  std::vector<double> om(n);
  for (std::size_t i = 1; i + 1 < n; ++i) om[i] = (theta[i + 1] - theta[i - 1]) / (2 * dt);
  om[0] = (theta[1] - (theta[n - 1] - span)) / (2 * dt);
  om[n - 1] = ((theta[0] + span) - theta[n - 2]) / (2 * dt);
  return om;
}

std::vector<double> snap_span_to_carrier(std::vector<double> omega, double dt, long* bin_out) {
  const double span = record_span(omega, dt);
  const long bin = std::lround(span / kTwoPi);
  if (bin < 2) throw PhaseTooShortError("extract_imf_fft: phase record below two periods");
  const double scale = kTwoPi * static_cast<double>(bin) / span;
  for (double& w : omega) w *= scale;
  *bin_out = bin;
  return omega;
}

}  // namespace

std::vector<double> resample_to_theta(const Signal& r, const PhaseFunction& theta,
                                      int n_theta) {
  if (!r.grid.periodic)
    throw InvalidInputError("resample_to_theta: signal must be periodic (mirror extend first)");
  if (theta.theta.size() != r.values.size())
    throw InvalidInputError("resample_to_theta: phase/signal length mismatch");
  if (n_theta < r.grid.n) throw InvalidInputError("resample_to_theta: n_theta below sample count");
  for (std::size_t i = 1; i < theta.theta.size(); ++i) {
    if (theta.theta[i] < theta.theta[i - 1])
      throw InvalidInputError("resample_to_theta: non-monotone phase");
  }
  if (theta.omega.size() != theta.theta.size())
    throw InvalidInputError("resample_to_theta: phase is missing its frequency samples");
  const double span = record_span(theta.omega, r.grid.dt());
  if (!(span > 0)) throw InvalidInputError("resample_to_theta: empty phase record");
  const auto nodes = strictly_increasing(theta.theta);
  const PeriodicSpline spline(nodes, r.values, span);
  std::vector<double> out(static_cast<std::size_t>(n_theta));
  for (int j = 0; j < n_theta; ++j)
    out[static_cast<std::size_t>(j)] = spline(nodes[0] + span * j / n_theta);
  return out;
}

EnvelopePair envelope_step(std::span<const double> r_theta, long carrier_bin,
                           const FilterSpec& filter) {
  if (carrier_bin < 2) throw PhaseTooShortError("envelope_step: carrier bin below 2");
  if (filter.width > 0.5 || filter.width <= 0.0)
    throw InvalidInputError("envelope_step: filter width must be in (0, 1/2]");
  const double band = filter.width * static_cast<double>(carrier_bin);
  if (band < 1.0) throw BandTooNarrowError("envelope_step: lambda_V * L < 1");
  const int n = static_cast<int>(r_theta.size());
  const int jmax = static_cast<int>(std::ceil(band));
  if (carrier_bin + jmax >= n / 2)
    throw InvalidInputError("envelope_step: theta grid too coarse for the carrier");

  const auto spectrum = dft_forward(r_theta);
  std::vector<std::complex<double>> demod(static_cast<std::size_t>(n), {0.0, 0.0});
  for (int j = -jmax; j <= jmax; ++j) {
    if (std::abs(j) >= band) continue;
    const int src = static_cast<int>(carrier_bin) + j;
    const int dst = (j >= 0) ? j : n + j;
    demod[static_cast<std::size_t>(dst)] =
        spectrum[static_cast<std::size_t>(src)] *
        filter_weight(filter, j / static_cast<double>(carrier_bin));
  }
  const auto z = dft_inverse(demod);
  EnvelopePair env;
  env.a.resize(r_theta.size());
  env.b.resize(r_theta.size());
  for (std::size_t i = 0; i < r_theta.size(); ++i) {
    env.a[i] = 2.0 * z[i].real();
    env.b[i] = kEnvelopeSignB * 2.0 * z[i].imag();
  }
  return env;
}

std::vector<double> phase_correction(const EnvelopePair& env, double dt, bool periodic,
                                     double alpha) {
  if (env.a.size() != env.b.size()) throw InvalidInputError("phase_correction: pair mismatch");
  const auto da = derivative(env.a, dt, periodic);
  const auto db = derivative(env.b, dt, periodic);
  const std::size_t n = env.a.size();
  std::vector<double> delta(n, 0.0);
  std::vector<bool> valid(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const double den = std::hypot(env.a[i], env.b[i]);
    if (den >= alpha) {
      valid[i] = true;
      delta[i] = (env.a[i] * db[i] - env.b[i] * da[i]) / (den * den);
    }
  }
  return fill_invalid(std::move(delta), valid, periodic);
}

double frequency_step_limit(std::span<const double> omega,
                            std::span<const double> delta_omega, double eta_max) {
  double eta = eta_max;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (delta_omega[i] < 0.0) eta = std::min(eta, omega[i] / (-delta_omega[i]));
  }
  return std::max(eta, 0.0);
}

PhaseUpdateResult phase_update(const PhaseFunction& theta, const EnvelopePair& env,
                               const Grid& grid, const FftEngineConfig& config) {
  if (static_cast<int>(env.a.size()) != grid.n)
    throw InvalidInputError("phase_update: envelope does not match grid");
  auto delta = phase_correction(env, grid.dt(), grid.periodic, config.alpha);
  for (double& d : delta) d *= kPhaseUpdateSign;
  const double eta = frequency_step_limit(theta.omega, delta, config.eta_max);
  std::vector<double> omega(theta.omega.begin(), theta.omega.end());
  const double scale = *std::max_element(omega.begin(), omega.end());
  for (std::size_t i = 0; i < omega.size(); ++i) {
    omega[i] += eta * delta[i];
    if (omega[i] < 0.0 && omega[i] > -1e-12 * scale) omega[i] = 0.0;
  }
  return {phase_from_frequency(omega, grid.dt()), eta};
}

FftExtractResult extract_imf_fft(const Signal& signal, const PhaseFunction& theta0,
                                 const FftEngineConfig& config) {
  if (theta0.omega.size() != signal.values.size())
    throw InvalidInputError("extract_imf_fft: theta0 does not match the signal grid");

  const int n0 = signal.grid.n;
  Signal work = signal.grid.periodic ? signal : mirror_extend(signal);
  std::vector<double> omega = signal.grid.periodic
                                  ? theta0.omega
                                  : mirror_extend_values(theta0.omega);
  const double dt = work.grid.dt();
  const int m = work.grid.n;
  const int n_theta = next_pow2(2 * m);

  std::vector<double> widths = config.continuation_widths;
  if (widths.empty()) {
    const double w = config.filter.width;
    widths = {w / 8, w / 4, w / 2, w};
  } else {
    for (std::size_t i = 1; i < widths.size(); ++i) {
      if (!(widths[i] > widths[i - 1]))
        throw InvalidInputError("extract_imf_fft: continuation widths must increase");
    }
    if (std::abs(widths.back() - config.filter.width) > 1e-12)
      throw InvalidInputError("extract_imf_fft: last continuation width must match the filter");
  }

  FftExtractResult result;
  const int levels = static_cast<int>(widths.size()) + (config.polish ? 1 : 0);
  long bin = 0;
  for (int level = 0; level < levels; ++level) {
    const bool filtered = level < static_cast<int>(widths.size());
    bool level_converged = false;
    for (int it = 0; it < config.max_iters; ++it) {
      omega = snap_span_to_carrier(std::move(omega), dt, &bin);
      const auto phase = phase_from_frequency(omega, dt);
      const double span = kTwoPi * static_cast<double>(bin);
      const auto env = demodulate(work, phase.theta, span, bin, config.filter, n_theta);

      EnvelopePair pair{env.a, env.b};
      auto delta = phase_correction(pair, dt, true, config.alpha);
      if (filtered) {
        delta = lowpass_in_theta(delta, phase.theta, span, bin,
                                 FilterSpec{config.filter.kind, widths[static_cast<std::size_t>(level)]},
                                 n_theta);
      }
      for (double& d : delta) d *= kPhaseUpdateSign;
      const double eta = frequency_step_limit(omega, delta, config.eta_max);

      double step_norm = 0.0, base_norm = 0.0;
      for (std::size_t i = 0; i < omega.size(); ++i) {
        const double s = eta * delta[i];
        step_norm += s * s;
        base_norm += omega[i] * omega[i];
        omega[i] = std::max(omega[i] + s, 0.0);
      }
      ++result.iterations;
      if (config.record_history) {
        result.omega_history.emplace_back(omega.begin(), omega.begin() + n0);
      }
      if (std::sqrt(step_norm) < config.eps0 * std::sqrt(base_norm)) {
        level_converged = true;
        break;
      }
    }
    result.level_end_iterations.push_back(result.iterations);
    result.converged = level_converged;
  }

  // Final demodulation at the converged phase, then fold the residual
  // quadrature into the phase so the component is a single a(t)cos(theta(t)).
  omega = snap_span_to_carrier(std::move(omega), dt, &bin);
  const auto phase = phase_from_frequency(omega, dt);
  const double span = kTwoPi * static_cast<double>(bin);
  const auto env = demodulate(work, phase.theta, span, bin, config.filter, n_theta);
  auto fold = fold_quadrature(phase.theta, span, env);
  auto omega_f = wrap_derivative(fold.theta, dt, fold.span);
  for (double& w : omega_f) w = std::max(w, 0.0);

  fold.envelope.resize(static_cast<std::size_t>(n0));
  fold.theta.resize(static_cast<std::size_t>(n0));
  omega_f.resize(static_cast<std::size_t>(n0));
  PhaseFunction final_phase;
  final_phase.theta = std::move(fold.theta);
  final_phase.omega = std::move(omega_f);
  result.component = make_imf_component(std::move(fold.envelope), std::move(final_phase));
  return result;
}

}  // namespace sparsetf
