// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sparsetf/errors.hpp"
#include "sparsetf/phase.hpp"

using namespace sparsetf;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("constant frequency integrates to a linear phase") {
  const int n = 101;
  const double dt = 1.0 / (n - 1);
  std::vector<double> omega(n, 2 * kPi);
  const auto p = phase_from_frequency(omega, dt);
  CHECK(p.theta.front() == 0.0);
  CHECK(p.theta.back() == doctest::Approx(2 * kPi));
  CHECK(p.cycle_count() == 1);

  const auto z = phase_from_frequency(std::vector<double>(n, 0.0), dt);
  for (double th : z.theta) CHECK(th == 0.0);
}

TEST_CASE("example frequency integrates to 60 pi with 30 periods") {
  const int n = 1025;
  const double dt = 1.0 / (n - 1);
  std::vector<double> omega(n);
  for (int i = 0; i < n; ++i)
    omega[static_cast<std::size_t>(i)] = 60 * kPi + 30 * kPi * std::cos(2 * kPi * i * dt);
  const auto p = phase_from_frequency(omega, dt);
  CHECK(p.theta.back() == doctest::Approx(60 * kPi).epsilon(1e-12));
  CHECK(p.cycle_count() == 30);
  for (std::size_t i = 1; i < p.theta.size(); ++i) CHECK(p.theta[i] >= p.theta[i - 1]);
}

TEST_CASE("negative frequency is rejected") {
  CHECK_THROWS_AS(phase_from_frequency(std::vector<double>{1.0, -0.1, 1.0}, 0.1),
                  InvalidInputError);
}

TEST_CASE("differentiating the integrated phase recovers omega at O(h^2)") {
  auto sup_error = [](int n) {
    const double dt = 1.0 / (n - 1);
    std::vector<double> omega(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      omega[static_cast<std::size_t>(i)] = 60 * kPi + 30 * kPi * std::cos(2 * kPi * i * dt);
    const auto p = phase_from_frequency(omega, dt);
    const auto d = derivative(p.theta, dt, false);
    double sup = 0;
    for (int i = 1; i + 1 < n; ++i)
      sup = std::max(sup, std::abs(d[static_cast<std::size_t>(i)] -
                                   omega[static_cast<std::size_t>(i)]));
    return sup;
  };
  const double coarse = sup_error(257);
  const double fine = sup_error(513);
  CHECK(fine < coarse);
  CHECK(fine / coarse == doctest::Approx(0.25).epsilon(0.3));  // second order
}

TEST_CASE("phase_from_samples derives omega and rejects decreasing input") {
  const std::vector<double> theta{0.0, 0.5, 1.2, 2.0, 3.1};
  const auto p = phase_from_samples(theta, 0.25);
  CHECK(p.omega.size() == theta.size());
  CHECK_THROWS_AS(phase_from_samples(std::vector<double>{0.0, 0.5, 0.4}, 0.25),
                  InvalidInputError);
}
