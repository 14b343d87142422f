// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "sparsetf/errors.hpp"
#include "sparsetf/separation.hpp"
#include "sparsetf/synth.hpp"

using namespace sparsetf;
namespace {
constexpr double kPi = std::numbers::pi;

std::pair<std::vector<double>, PhaseFunction> analytic_component(
    const Grid& grid, const std::function<double(double)>& env,
    const std::function<double(double)>& theta, const std::function<double(double)>& omega) {
  std::vector<double> a(static_cast<std::size_t>(grid.n));
  PhaseFunction p;
  p.theta.resize(a.size());
  p.omega.resize(a.size());
  for (int i = 0; i < grid.n; ++i) {
    const double t = grid.at(i);
    a[static_cast<std::size_t>(i)] = env(t);
    p.theta[static_cast<std::size_t>(i)] = theta(t);
    p.omega[static_cast<std::size_t>(i)] = omega(t);
  }
  return {std::move(a), std::move(p)};
}

}  // namespace

TEST_CASE("constant amplitude with linear phase has zero separation factor") {
  const Grid grid{0, 1, 256, false};
  auto comp = analytic_component(
      grid, [](double) { return 1.0; }, [](double t) { return 2 * kPi * 20 * t; },
      [](double) { return 2 * kPi * 20; });
  const auto report = separation_report({comp}, grid);
  CHECK(report.epsilon == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::isinf(report.d));
  CHECK(report.epsilon_profile.size() == 256);
}

TEST_CASE("ss-pair oscillatory component has separation factor near 1.4") {
  const Grid grid{0, 1, 4096, false};
  auto comp = analytic_component(
      grid, [](double t) { return 1.0 / (1.1 + std::cos(2 * kPi * t)); },
      [](double t) { return 10 * std::sin(2 * kPi * t) + 40 * kPi * t; },
      [](double t) { return 20 * kPi * std::cos(2 * kPi * t) + 40 * kPi; });
  const auto report = separation_report({comp}, grid);
  CHECK(report.epsilon == doctest::Approx(1.4).epsilon(0.075));
}

TEST_CASE("separation factor agrees with a 16x finer grid within 1%") {
  auto eps_at = [](int n) {
    const Grid grid{0, 1, n, false};
    auto comp = analytic_component(
        grid, [](double) { return 1.0; },
        [](double t) { return 60 * kPi * t + 15 * std::sin(2 * kPi * t); },
        [](double t) { return 60 * kPi + 30 * kPi * std::cos(2 * kPi * t); });
    return separation_report({comp}, grid).epsilon;
  };
  const double coarse = eps_at(1024);
  const double fine = eps_at(16 * 1024);
  CHECK(coarse == doctest::Approx(fine).epsilon(0.01));
}

TEST_CASE("two components report the minimum frequency ratio") {
  const Grid grid{0, 1, 128, false};
  auto slow = analytic_component(
      grid, [](double) { return 1.0; }, [](double t) { return 2 * kPi * 10 * t; },
      [](double) { return 2 * kPi * 10; });
  auto fast = analytic_component(
      grid, [](double) { return 1.0; },
      [](double t) { return 2 * kPi * 40 * t + std::sin(2 * kPi * t); },
      [](double t) { return 2 * kPi * 40 + 2 * kPi * std::cos(2 * kPi * t); });
  const auto report = separation_report({slow, fast}, grid);
  CHECK(report.d == doctest::Approx((2 * kPi * 40 - 2 * kPi) / (2 * kPi * 10)).epsilon(1e-6));
  CHECK_THROWS_AS(separation_report({fast, slow}, grid), InvalidInputError);
}

TEST_CASE("nonpositive instantaneous frequency is rejected") {
  const Grid grid{0, 1, 64, false};
  auto comp = analytic_component(
      grid, [](double) { return 1.0; }, [](double t) { return t * t; },
      [](double t) { return 2 * t - 0.5; });  // negative near t = 0
  CHECK_THROWS_AS(separation_report({comp}, grid), InvalidComponentError);
}

namespace {

TimeKernel cosine_bump(double half_width) {
  return TimeKernel{[half_width](double s) {
                      return 0.5 * (1.0 + std::cos(kPi * s / half_width)) / half_width;
                    },
                    half_width};
}

}  // namespace

TEST_CASE("demodulation estimate: constant amplitude, linear phase") {
  const Grid grid{0, 1, 512, false};
  auto [a, phase] = analytic_component(
      grid, [](double) { return 1.0; }, [](double t) { return 2 * kPi * 40 * t; },
      [](double) { return 2 * kPi * 40; });
  const auto res = conv_lemma_residual(a, phase, grid, cosine_bump(0.1));
  CHECK(res.bound == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(res.lhs <= res.bound + 10 * res.quad_error);
}

TEST_CASE("demodulation estimate holds and the a' term scales linearly") {
  const Grid grid{0, 1, 512, false};
  auto make = [&](double slope) {
    return analytic_component(
        grid, [slope](double t) { return 1.0 + slope * t; },
        [](double t) { return 2 * kPi * 40 * t; }, [](double) { return 2 * kPi * 40; });
  };
  auto [a1, p1] = make(0.1);
  auto [a2, p2] = make(0.2);
  const auto r1 = conv_lemma_residual(a1, p1, grid, cosine_bump(0.1));
  const auto r2 = conv_lemma_residual(a2, p2, grid, cosine_bump(0.1));
  CHECK(r1.lhs <= r1.bound + 10 * r1.quad_error);
  CHECK(r2.lhs <= r2.bound + 10 * r2.quad_error);
  // theta'' = 0, so the bound is sup|a'| I1 exactly
  CHECK(r2.bound == doctest::Approx(2 * r1.bound).epsilon(1e-9));
}

TEST_CASE("demodulation estimate on randomized smooth instances") {
  std::mt19937_64 rng(7);
  auto uni = [&](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const Grid grid{0, 1, 384, false};
  for (int trial = 0; trial < 10; ++trial) {
    const double a0 = uni(0.5, 2.0), a1 = uni(-0.5, 0.5), am = uni(1, 3);
    const double w0 = 2 * kPi * uni(25, 60), wm = uni(0, 8);
    auto [a, phase] = analytic_component(
        grid,
        [=](double t) { return a0 + a1 * std::sin(2 * kPi * am * t); },
        [=](double t) { return w0 * t - wm / (2 * kPi) * std::cos(2 * kPi * t); },
        [=](double t) { return w0 + wm * std::sin(2 * kPi * t); });
    const auto res = conv_lemma_residual(a, phase, grid, cosine_bump(uni(0.05, 0.12)));
    CHECK(res.lhs <= res.bound + 10 * res.quad_error);
  }
}

TEST_CASE("invalid kernels are rejected") {
  const Grid grid{0, 1, 64, false};
  std::vector<double> a(64, 1.0);
  PhaseFunction p;
  p.theta.assign(64, 0.0);
  p.omega.assign(64, 0.0);
  for (int i = 0; i < 64; ++i) p.theta[static_cast<std::size_t>(i)] = 40 * kPi * i / 63.0;
  CHECK_THROWS_AS(conv_lemma_residual(a, p, grid, TimeKernel{nullptr, 0.1}),
                  InvalidKernelError);
  CHECK_THROWS_AS(
      conv_lemma_residual(a, p, grid,
                          TimeKernel{[](double s) { return 1.0 / s; }, 0.1}),
      InvalidKernelError);
}
