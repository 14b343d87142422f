// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include "sparsetf/l1_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "sparsetf/basis.hpp"
#include "sparsetf/errors.hpp"
#include "sparsetf/fft_engine.hpp"
#include "sparsetf/interpolate.hpp"

namespace sparsetf {

namespace {

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double t) {
  return v.unaryExpr([t](double x) {
    const double m = std::abs(x) - t;
    return m > 0.0 ? (x > 0.0 ? m : -m) : 0.0;
  });
}

double operator_norm_estimate(const Eigen::MatrixXd& a) {
  // Power iteration on A^T A with a fixed deterministic start.
  Eigen::VectorXd v(a.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 1.0 + 0.001 * static_cast<double>(i % 7);
  v.normalize();
  double s = 0.0;
  for (int it = 0; it < 60; ++it) {
    Eigen::VectorXd w = a.transpose() * (a * v);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    w /= norm;
    const double change = (w - v).norm();
    v = std::move(w);
    s = norm;
    if (change < 1e-9) break;
  }
  return std::sqrt(s);
}

struct FoldedPhase {
  std::vector<double> envelope, theta, omega;
};

FoldedPhase fold(const std::vector<double>& theta, const Eigen::VectorXd& a,
                 const Eigen::VectorXd& b, double dt) {
  const std::size_t n = theta.size();
  FoldedPhase out;
  out.envelope.resize(n);
  out.theta.resize(n);
  double prev_phi = 0.0;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ei = static_cast<Eigen::Index>(i);
    out.envelope[i] = std::hypot(a[ei], b[ei]);
    double phi = std::atan2(-b[ei], a[ei]);
    if (i > 0) phi += two_pi * std::round((prev_phi - phi) / two_pi);
    prev_phi = phi;
    out.theta[i] = theta[i] + phi;
  }
  for (std::size_t i = 1; i < n; ++i) out.theta[i] = std::max(out.theta[i], out.theta[i - 1]);
  out.omega = derivative(out.theta, dt, false);
  for (double& w : out.omega) w = std::max(w, 0.0);
  return out;
}

}  // namespace

L1Solution solve_l1_ls(const L1Problem& problem, const L1SolverConfig& config,
                       const Eigen::VectorXd* warm_start) {
  const auto& a = problem.design;
  const auto& r = problem.target;
  if (a.rows() != r.size()) throw InvalidInputError("solve_l1_ls: design/target mismatch");
  if (!a.allFinite() || !r.allFinite()) throw InvalidInputError("solve_l1_ls: non-finite entries");
  if (problem.gamma < 0.0) throw InvalidInputError("solve_l1_ls: gamma must be nonnegative");

  const double sigma = operator_norm_estimate(a);
  const double lip = std::max(2.0 * sigma * sigma * 1.02, 1e-300);
  const double gamma = problem.gamma;

  auto objective = [&](const Eigen::VectorXd& x) {
    return gamma * x.lpNorm<1>() + (r - a * x).squaredNorm();
  };

  L1Solution sol;
  Eigen::VectorXd x = (warm_start != nullptr && warm_start->size() == a.cols())
                          ? *warm_start
                          : Eigen::VectorXd::Zero(a.cols());
  Eigen::VectorXd y = x;
  double tt = 1.0;
  double fx = objective(x);
  sol.objective_history.push_back(fx);

  for (int it = 0; it < config.max_iters; ++it) {
    Eigen::VectorXd g = 2.0 * (a.transpose() * (a * y - r));
    Eigen::VectorXd xn = soft_threshold(y - g / lip, gamma / lip);
    double fn = objective(xn);
    if (fn > fx) {
      // restart acceleration with a plain descent step from x
      tt = 1.0;
      g = 2.0 * (a.transpose() * (a * x - r));
      xn = soft_threshold(x - g / lip, gamma / lip);
      fn = objective(xn);
    }
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tt * tt));
    y = xn + ((tt - 1.0) / tn) * (xn - x);
    const bool check = (it % 5 == 4) || (xn - x).lpNorm<Eigen::Infinity>() <
                                            config.rel_tol * (1.0 + x.lpNorm<Eigen::Infinity>());
    x = std::move(xn);
    tt = tn;
    fx = fn;
    sol.objective_history.push_back(fx);
    sol.iterations = it + 1;
    if (check) {
      const Eigen::VectorXd gx = 2.0 * (a.transpose() * (a * x - r));
      const double fp =
          (x - soft_threshold(x - gx / lip, gamma / lip)).lpNorm<Eigen::Infinity>();
      if (fp <= config.rel_tol * (1.0 + x.lpNorm<Eigen::Infinity>())) {
        sol.converged = true;
        break;
      }
    }
  }
  sol.x = std::move(x);
  sol.objective = fx;
  return sol;
}

L1ExtractResult extract_imf_l1(const SampledSignal& samples, const PhaseFunction& theta0,
                               double gamma, const L1EngineConfig& config) {
  if (samples.times.empty()) throw InvalidInputError("extract_imf_l1: no samples");
  if (theta0.size() < 8) throw InvalidInputError("extract_imf_l1: theta0 grid too small");

  const int ng = theta0.size();
  const Grid grid{samples.t0, samples.t1, ng, false};
  const double dt = grid.dt();
  const auto grid_times = grid.times();
  const Eigen::Map<const Eigen::VectorXd> f(samples.values.data(),
                                            static_cast<Eigen::Index>(samples.values.size()));

  std::vector<double> omega = theta0.omega;
  Eigen::VectorXd warm;
  bool have_warm = false;

  L1ExtractResult result;
  result.grid = grid;

  auto assemble = [&](const std::vector<double>& theta, long cycles, Eigen::MatrixXd* bs_out)
      -> Eigen::MatrixXd {
    const CubicSpline th_s(grid_times, theta);
    std::vector<double> theta_s(samples.times.size());
    for (std::size_t i = 0; i < samples.times.size(); ++i) theta_s[i] = th_s(samples.times[i]);
    Eigen::MatrixXd bs = basis_at_phase(theta_s, cycles, config.lambda_v);
    Eigen::MatrixXd design(bs.rows(), 2 * bs.cols());
    for (Eigen::Index i = 0; i < bs.rows(); ++i) {
      const double c = std::cos(theta_s[static_cast<std::size_t>(i)]);
      const double s = std::sin(theta_s[static_cast<std::size_t>(i)]);
      design.row(i).head(bs.cols()) = bs.row(i) * c;
      design.row(i).tail(bs.cols()) = bs.row(i) * s;
    }
    if (bs_out != nullptr) *bs_out = std::move(bs);
    return design;
  };

  PhaseFunction phase = phase_from_frequency(omega, dt);
  for (int outer = 0; outer < config.max_outer_iters; ++outer) {
    const long cycles = phase.cycle_count();
    if (cycles < 1) throw PhaseTooShortError("extract_imf_l1: phase below one period");
    const Eigen::MatrixXd design = assemble(phase.theta, cycles, nullptr);
    const L1Solution sol = solve_l1_ls({design, f, gamma}, config.solver,
                                       have_warm && warm.size() == design.cols() ? &warm : nullptr);
    warm = sol.x;
    have_warm = true;

    const Eigen::MatrixXd bg = basis_at_phase(phase.theta, cycles, config.lambda_v);
    const Eigen::Index nb = bg.cols();
    const Eigen::VectorXd a = bg * sol.x.head(nb);
    const Eigen::VectorXd b = bg * sol.x.tail(nb);
    EnvelopePair env;
    env.a.assign(a.data(), a.data() + a.size());
    env.b.assign(b.data(), b.data() + b.size());

    auto delta = phase_correction(env, dt, false, config.alpha);
    for (double& d : delta) d *= kPhaseUpdateSign;
    const double eta = frequency_step_limit(omega, delta, config.eta_max);
    for (std::size_t i = 0; i < omega.size(); ++i)
      omega[i] = std::max(omega[i] + eta * delta[i], 0.0);

    PhaseFunction next = phase_from_frequency(omega, dt);
    double diff = 0.0, base = 0.0;
    for (std::size_t i = 0; i < next.theta.size(); ++i) {
      const double d = next.theta[i] - phase.theta[i];
      diff += d * d;
      base += phase.theta[i] * phase.theta[i];
    }
    phase = std::move(next);
    ++result.iterations;
    if (config.record_history) result.omega_history.push_back(omega);
    if (std::sqrt(diff) < config.eps0 * std::sqrt(base)) {
      result.converged = true;
      break;
    }
  }

  // Final fit at the converged phase, support-refit to remove the
  // soft-threshold bias, then fold b into the phase.
  const long cycles = phase.cycle_count();
  if (cycles < 1) throw PhaseTooShortError("extract_imf_l1: phase below one period");
  Eigen::MatrixXd bs;
  const Eigen::MatrixXd design = assemble(phase.theta, cycles, &bs);
  L1Solution sol = solve_l1_ls({design, f, gamma}, config.solver,
                               have_warm && warm.size() == design.cols() ? &warm : nullptr);
  Eigen::VectorXd x = sol.x;
  if (config.debias && gamma > 0.0) {
    const double tol = 1e-12 * std::max(1.0, x.lpNorm<Eigen::Infinity>());
    std::vector<Eigen::Index> support;
    for (Eigen::Index j = 0; j < x.size(); ++j)
      if (std::abs(x[j]) > tol) support.push_back(j);
    if (!support.empty()) {
      Eigen::MatrixXd as(design.rows(), static_cast<Eigen::Index>(support.size()));
      for (std::size_t j = 0; j < support.size(); ++j)
        as.col(static_cast<Eigen::Index>(j)) = design.col(support[j]);
      const Eigen::VectorXd xs = as.colPivHouseholderQr().solve(f);
      x.setZero();
      for (std::size_t j = 0; j < support.size(); ++j) x[support[j]] = xs[static_cast<Eigen::Index>(j)];
    }
  }

  const Eigen::MatrixXd bg = basis_at_phase(phase.theta, cycles, config.lambda_v);
  const Eigen::Index nb = bg.cols();
  const Eigen::VectorXd a = bg * x.head(nb);
  const Eigen::VectorXd b = bg * x.tail(nb);
  const Eigen::VectorXd fitted = design * x;
  result.fitted_at_samples.assign(fitted.data(), fitted.data() + fitted.size());

  auto folded = fold(phase.theta, a, b, dt);
  PhaseFunction final_phase;
  final_phase.theta = std::move(folded.theta);
  final_phase.omega = std::move(folded.omega);
  result.component = make_imf_component(std::move(folded.envelope), std::move(final_phase));
  return result;
}

GapRecovery recover_gapped(const SampledSignal& samples, const PhaseFunction& theta0,
                           double gamma, const L1EngineConfig& config,
                           std::span<const double> baseline) {
  double gap_total = 0.0;
  for (const auto& [lo, hi] : samples.gaps) gap_total += hi - lo;
  if (gap_total >= 0.5 * (samples.t1 - samples.t0))
    throw InvalidInputError("recover_gapped: gaps cover 50% or more of the domain");

  auto extracted = extract_imf_l1(samples, theta0, gamma, config);
  std::vector<double> recon = extracted.component.reconstruction;
  if (!baseline.empty()) {
    if (baseline.size() != recon.size())
      throw InvalidInputError("recover_gapped: baseline length mismatch");
    for (std::size_t i = 0; i < recon.size(); ++i) recon[i] += baseline[i];
  }
  GapRecovery out;
  out.reconstruction = make_signal(extracted.grid, std::move(recon));
  out.phase = extracted.component.phase;
  out.component = std::move(extracted.component);
  return out;
}

SparseRecovery recover_undersampled(const SampledSignal& samples,
                                    const PhaseFunction& theta0, double gamma,
                                    const L1EngineConfig& config, int grid_n) {
  if (samples.times.size() < 8)
    throw InvalidInputError("recover_undersampled: need at least 8 samples");
  if (theta0.size() != grid_n)
    throw InvalidInputError("recover_undersampled: theta0 must live on the grid_n grid");
  auto extracted = extract_imf_l1(samples, theta0, gamma, config);
  SparseRecovery out;
  out.reconstruction = make_signal(extracted.grid, extracted.component.reconstruction);
  out.component = std::move(extracted.component);
  return out;
}

}  // namespace sparsetf
