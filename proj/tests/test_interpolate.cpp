// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sparsetf/errors.hpp"
#include "sparsetf/interpolate.hpp"

using namespace sparsetf;

TEST_CASE("linear interpolation of a line") {
  const std::vector<double> nodes{0, 1}, values{0, 2}, queries{0.5};
  const auto out = interpolate(nodes, values, queries, InterpMethod::linear);
  CHECK(out[0] == doctest::Approx(1.0));
}

TEST_CASE("cubic spline tracks sin(2 pi t) to 1e-5") {
  const int n = 33;
  std::vector<double> nodes(n), values(n);
  for (int i = 0; i < n; ++i) {
    nodes[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
    values[static_cast<std::size_t>(i)] =
        std::sin(2 * std::numbers::pi * nodes[static_cast<std::size_t>(i)]);
  }
  std::vector<double> queries;
  for (int i = 0; i + 1 < n; ++i) queries.push_back((i + 0.5) / (n - 1));
  const auto out = interpolate(nodes, values, queries);
  double sup = 0;
  for (std::size_t q = 0; q < queries.size(); ++q)
    sup = std::max(sup, std::abs(out[q] - std::sin(2 * std::numbers::pi * queries[q])));
  CHECK(sup < 1e-5);
}

TEST_CASE("interpolation reproduces nodes and clamps outside") {
  const std::vector<double> nodes{0, 0.3, 0.7, 1.0}, values{1, -2, 5, 3};
  for (auto method : {InterpMethod::cubic_spline, InterpMethod::linear}) {
    const auto out = interpolate(nodes, values, nodes, method);
    for (std::size_t i = 0; i < nodes.size(); ++i) CHECK(out[i] == doctest::Approx(values[i]));
    const auto clamped = interpolate(nodes, values, std::vector<double>{-1.0, 2.0}, method);
    CHECK(clamped[0] == doctest::Approx(1));
    CHECK(clamped[1] == doctest::Approx(3));
  }
}

TEST_CASE("interpolation input errors") {
  CHECK_THROWS_AS(interpolate(std::vector<double>{0.0}, std::vector<double>{1.0},
                              std::vector<double>{0.0}, InterpMethod::linear),
                  InvalidInputError);
  CHECK_THROWS_AS(interpolate(std::vector<double>{0, 0.5, 0.5, 1},
                              std::vector<double>{1, 2, 3, 4}, std::vector<double>{0.2}),
                  InvalidInputError);
  // cubic needs 4 nodes
  CHECK_THROWS_AS(interpolate(std::vector<double>{0, 0.5, 1}, std::vector<double>{1, 2, 3},
                              std::vector<double>{0.2}, InterpMethod::cubic_spline),
                  InvalidInputError);
}
