// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include "sparsetf/separation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>

#include "sparsetf/errors.hpp"
#include "sparsetf/interpolate.hpp"

namespace sparsetf {

SeparationReport separation_report(
    const std::vector<std::pair<std::vector<double>, PhaseFunction>>& components,
    const Grid& grid) {
  if (components.empty()) throw InvalidInputError("separation_report: no components");
  const double h = grid.dt();
  const auto n = static_cast<std::size_t>(grid.n);
  constexpr double inf = std::numeric_limits<double>::infinity();

  SeparationReport report;
  report.epsilon_profile.assign(n, 0.0);
  report.ratio_profile.assign(n, inf);

  double prev_mean = -inf;
  for (const auto& [envelope, phase] : components) {
    if (envelope.size() != n || phase.omega.size() != n)
      throw InvalidInputError("separation_report: component length mismatch");
    for (double w : phase.omega) {
      if (!(w > 0.0)) throw InvalidComponentError("separation_report: theta' <= 0");
    }
    const double mean =
        std::accumulate(phase.omega.begin(), phase.omega.end(), 0.0) / static_cast<double>(n);
    if (mean < prev_mean)
      throw InvalidInputError("separation_report: components must be ordered by mean frequency");
    prev_mean = mean;

    const auto da = derivative(envelope, h, false);
    const auto dw = derivative(phase.omega, h, false);
    double eps = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = phase.omega[i];
      const double local = std::max(std::abs(da[i] / w), std::abs(dw[i] / (w * w)));
      eps = std::max(eps, local);
      report.epsilon_profile[i] = std::max(report.epsilon_profile[i], local);
    }
    report.epsilon_per_component.push_back(eps);
    report.epsilon = std::max(report.epsilon, eps);
  }

  report.d = inf;
  for (std::size_t k = 1; k < components.size(); ++k) {
    const auto& lo = components[k - 1].second.omega;
    const auto& hi = components[k].second.omega;
    for (std::size_t i = 0; i < n; ++i) {
      const double ratio = hi[i] / lo[i];
      report.ratio_profile[i] = std::min(report.ratio_profile[i], ratio);
      report.d = std::min(report.d, ratio);
    }
  }
  return report;
}

namespace {

struct KernelMoments {
  double i0, i1, i2;
};

KernelMoments kernel_moments(const TimeKernel& phi, int resolution) {
  const double w = phi.half_width;
  const double dh = 2 * w / resolution;
  double i0 = 0, i1 = 0, i2 = 0;
  for (int j = 0; j <= resolution; ++j) {
    const double s = -w + j * dh;
    const double v = phi.f(s);
    if (!std::isfinite(v)) throw InvalidKernelError("kernel: non-finite value on support");
    const double wq = (j == 0 || j == resolution) ? 0.5 : 1.0;
    i0 += wq * std::abs(v) * dh;
    i1 += wq * std::abs(s * v) * dh;
    i2 += wq * std::abs(s * s * v) * dh;
  }
  if (!std::isfinite(i0) || !std::isfinite(i1) || !std::isfinite(i2))
    throw InvalidKernelError("kernel: moments not finite");
  return {i0, i1, i2};
}

std::complex<double> kernel_transform(const TimeKernel& phi, double freq, int resolution) {
  const double w = phi.half_width;
  const double dh = 2 * w / resolution;
  std::complex<double> acc{0, 0};
  for (int j = 0; j <= resolution; ++j) {
    const double s = -w + j * dh;
    const double wq = (j == 0 || j == resolution) ? 0.5 : 1.0;
    acc += wq * phi.f(s) * std::exp(std::complex<double>(0, -freq * s)) * dh;
  }
  return acc;
}

// sup_t |int a e^{-i theta} phi(tau - t) dtau - a(t) e^{-i theta(t)} phihat(theta'(t))|
// over the grid points whose kernel support stays inside the window, with the
// integrand sampled at `steps` points per grid cell.
double lhs_sup(std::span<const double> a, const PhaseFunction& theta, const Grid& grid,
               const TimeKernel& phi, int steps, int transform_res) {
  const double h = grid.dt();
  const auto times = grid.times();
  const CubicSpline a_s(times, a);
  const CubicSpline th_s(times, theta.theta);
  const double w = phi.half_width;
  const double dq = h / steps;

  double sup = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    const double t = times[static_cast<std::size_t>(i)];
    if (t - w < grid.t0 || t + w > grid.t1) continue;
    std::complex<double> acc{0, 0};
    const int m = static_cast<int>(std::ceil(2 * w / dq));
    for (int j = 0; j <= m; ++j) {
      const double tau = t - w + j * (2 * w / m);
      const double wq = (j == 0 || j == m) ? 0.5 : 1.0;
      acc += wq * a_s(tau) * std::exp(std::complex<double>(0, -th_s(tau))) *
             phi.f(tau - t) * (2 * w / m);
    }
    const auto ref = a[static_cast<std::size_t>(i)] *
                     std::exp(std::complex<double>(0, -theta.theta[static_cast<std::size_t>(i)])) *
                     kernel_transform(phi, theta.omega[static_cast<std::size_t>(i)], transform_res);
    sup = std::max(sup, std::abs(acc - ref));
  }
  return sup;
}

}  // namespace

ConvLemmaResult conv_lemma_residual(std::span<const double> a, const PhaseFunction& theta,
                                    const Grid& grid, const TimeKernel& phi) {
  if (!(phi.half_width > 0) || !phi.f)
    throw InvalidKernelError("kernel: empty support");
  if (a.size() != static_cast<std::size_t>(grid.n) ||
      theta.theta.size() != static_cast<std::size_t>(grid.n))
    throw InvalidInputError("conv_lemma_residual: length mismatch");

  const auto moments = kernel_moments(phi, 4096);
  const double h = grid.dt();
  const auto da = derivative(a, h, false);
  const auto dw = derivative(theta.omega, h, false);
  double sup_da = 0, sup_a = 0, sup_ddth = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sup_da = std::max(sup_da, std::abs(da[i]));
    sup_a = std::max(sup_a, std::abs(a[i]));
    sup_ddth = std::max(sup_ddth, std::abs(dw[i]));
  }

  ConvLemmaResult out;
  const double coarse = lhs_sup(a, theta, grid, phi, 2, 512);
  const double fine = lhs_sup(a, theta, grid, phi, 4, 1024);
  out.lhs = fine;
  out.quad_error = std::max(std::abs(fine - coarse), 1e-12 * (1.0 + sup_a * moments.i0));
  out.bound = sup_da * moments.i1 + 0.5 * sup_a * sup_ddth * moments.i2;
  return out;
}

}  // namespace sparsetf
