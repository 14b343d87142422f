// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include "sparsetf/component.hpp"

#include <cmath>
#include <numeric>

#include "sparsetf/errors.hpp"

namespace sparsetf {

IMFComponent make_imf_component(std::vector<double> envelope, PhaseFunction phase) {
  if (envelope.size() != phase.theta.size())
    throw InvalidInputError("component: envelope/phase length mismatch");
  IMFComponent c;
  c.reconstruction.resize(envelope.size());
  for (std::size_t i = 0; i < envelope.size(); ++i)
    c.reconstruction[i] = envelope[i] * std::cos(phase.theta[i]);
  c.envelope = std::move(envelope);
  c.phase = std::move(phase);
  return c;
}

double mean_omega(const IMFComponent& component) {
  const auto& w = component.phase.omega;
  if (w.empty()) return 0.0;
  return std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
}

}  // namespace sparsetf
