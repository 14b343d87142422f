// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include "sparsetf/interpolate.hpp"

#include <algorithm>
#include <cmath>

#include "sparsetf/errors.hpp"

namespace sparsetf {

namespace {

void check_nodes(std::span<const double> nodes, std::span<const double> values,
                 std::size_t min_nodes) {
  if (nodes.size() != values.size())
    throw InvalidInputError("interpolate: nodes/values length mismatch");
  if (nodes.size() < min_nodes) throw InvalidInputError("interpolate: too few nodes");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i] < nodes[i + 1]))
      throw InvalidInputError("interpolate: nodes must be strictly increasing");
  }
}

}  // namespace

CubicSpline::CubicSpline(std::span<const double> nodes, std::span<const double> values)
    : x_(nodes.begin(), nodes.end()), y_(values.begin(), values.end()) {
  check_nodes(nodes, values, 4);
  const std::size_t n = x_.size();
  // Natural spline: solve the tridiagonal system for second derivatives.
  std::vector<double> diag(n, 2.0), off(n, 0.0), rhs(n, 0.0);
  m_.assign(n, 0.0);
  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = h[i - 1], hr = h[i];
    diag[i] = 2.0 * (hl + hr);
    off[i] = hr;
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
  }
  // Thomas algorithm on the interior rows; m_[0] = m_[n-1] = 0.
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double w = h[i - 1] / diag[i - 1];
    diag[i] -= w * off[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = (rhs[i] - off[i] * m_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

double CubicSpline::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double h = x_[i + 1] - x_[i];
  const double u = (x - x_[i]) / h;
  const double v = 1.0 - u;
  return v * y_[i] + u * y_[i + 1] +
         h * h / 6.0 * ((v * v * v - v) * m_[i] + (u * u * u - u) * m_[i + 1]);
}

std::vector<double> interpolate(std::span<const double> nodes,
                                std::span<const double> values,
                                std::span<const double> queries, InterpMethod method) {
  std::vector<double> out(queries.size());
  if (method == InterpMethod::linear) {
    check_nodes(nodes, values, 2);
    for (std::size_t q = 0; q < queries.size(); ++q) {
      const double x = queries[q];
      if (x <= nodes.front()) {
        out[q] = values.front();
      } else if (x >= nodes.back()) {
        out[q] = values.back();
      } else {
        const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - nodes.begin()) - 1;
        const double u = (x - nodes[i]) / (nodes[i + 1] - nodes[i]);
        out[q] = (1.0 - u) * values[i] + u * values[i + 1];
      }
    }
    return out;
  }
  CubicSpline spline(nodes, values);
  for (std::size_t q = 0; q < queries.size(); ++q) out[q] = spline(queries[q]);
  return out;
}

}  // namespace sparsetf
