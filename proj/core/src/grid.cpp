// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include "sparsetf/grid.hpp"

#include <cmath>
#include <numeric>

#include "sparsetf/errors.hpp"

namespace sparsetf {

std::vector<double> Grid::times() const {
  std::vector<double> out(static_cast<std::size_t>(n));
  const double h = dt();
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = t0 + i * h;
  return out;
}

namespace {

void check_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw InvalidInputError(std::string(what) + ": non-finite value");
  }
}

}  // namespace

Signal make_signal(Grid grid, std::vector<double> values) {
  if (grid.n < 8) throw InvalidInputError("signal: need at least 8 samples");
  if (static_cast<int>(values.size()) != grid.n)
    throw InvalidInputError("signal: value count does not match grid");
  if (!(grid.t1 > grid.t0)) throw InvalidInputError("signal: t1 must exceed t0");
  check_finite(values, "signal");
  return Signal{grid, std::move(values)};
}

SampledSignal make_sampled_signal(double t0, double t1, std::vector<double> times,
                                  std::vector<double> values,
                                  std::vector<std::pair<double, double>> gaps) {
  if (times.size() != values.size())
    throw InvalidInputError("samples: times/values length mismatch");
  if (times.empty()) throw InvalidInputError("samples: empty");
  if (!(t1 > t0)) throw InvalidInputError("samples: t1 must exceed t0");
  check_finite(times, "samples");
  check_finite(values, "samples");
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    if (!(times[i] < times[i + 1]))
      throw InvalidInputError("samples: times must be strictly increasing");
  }
  if (times.front() < t0 || times.back() > t1)
    throw InvalidInputError("samples: times outside [t0, t1]");
  for (const auto& [lo, hi] : gaps) {
    if (!(hi > lo)) throw InvalidInputError("samples: empty gap interval");
    for (double t : times) {
      if (t > lo && t < hi) throw InvalidInputError("samples: sample inside declared gap");
    }
  }
  return SampledSignal{t0, t1, std::move(times), std::move(values), std::move(gaps)};
}

Signal mirror_extend(const Signal& signal) {
  if (signal.grid.periodic) throw InvalidInputError("mirror_extend: signal already periodic");
  const int n = signal.grid.n;
  const double h = signal.grid.dt();
  Grid ext{signal.grid.t0, signal.grid.t0 + 2 * n * h, 2 * n, true};
  return Signal{ext, mirror_extend_values(signal.values)};
}

std::vector<double> mirror_extend_values(std::span<const double> values) {
  std::vector<double> out;
  out.reserve(values.size() * 2);
  out.assign(values.begin(), values.end());
  out.insert(out.end(), values.rbegin(), values.rend());
  return out;
}

double snr_db(const Signal& signal, double sigma) {
  if (!(sigma > 0)) throw InvalidInputError("snr_db: sigma must be positive");
  const auto& v = signal.values;
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= n;
  return 10.0 * std::log10(var / (sigma * sigma));
}

double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace sparsetf
