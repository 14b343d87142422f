// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include "sparsetf/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sparsetf/errors.hpp"

namespace sparsetf::synth {

namespace {

constexpr double kPi = std::numbers::pi;

struct AnalyticComponent {
  std::function<double(double)> envelope;
  std::function<double(double)> theta;
  std::function<double(double)> omega;
};

TruthComponent sample_component(const AnalyticComponent& c, const Grid& grid) {
  TruthComponent out;
  const int n = grid.n;
  out.envelope.resize(static_cast<std::size_t>(n));
  out.phase.theta.resize(static_cast<std::size_t>(n));
  out.phase.omega.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = grid.at(i);
    out.envelope[static_cast<std::size_t>(i)] = c.envelope(t);
    out.phase.theta[static_cast<std::size_t>(i)] = c.theta(t);
    out.phase.omega[static_cast<std::size_t>(i)] = c.omega(t);
  }
  return out;
}

std::vector<double> sample_fn(const std::function<double(double)>& f, const Grid& grid) {
  std::vector<double> out(static_cast<std::size_t>(grid.n));
  for (int i = 0; i < grid.n; ++i) out[static_cast<std::size_t>(i)] = f(grid.at(i));
  return out;
}

// clean = sum of component reconstructions + trend, accumulated in order so
// the identity is exact on the grid.
std::vector<double> assemble_clean(const std::vector<TruthComponent>& comps,
                                   const std::optional<std::vector<double>>& trend, int n) {
  std::vector<double> clean(static_cast<std::size_t>(n), 0.0);
  if (trend) clean = *trend;
  for (const auto& c : comps) {
    for (int i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      clean[u] += c.envelope[u] * std::cos(c.phase.theta[u]);
    }
  }
  return clean;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<double> white_noise(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidInputError("white_noise: n must be positive");
  std::mt19937_64 rng(seed);
  std::vector<double> out(static_cast<std::size_t>(n));
  // Box-Muller keeps the stream identical across standard libraries.
  for (int i = 0; i < n; i += 2) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double radius = std::sqrt(-2.0 * std::log1p(-u1));
    out[static_cast<std::size_t>(i)] = radius * std::cos(2.0 * kPi * u2);
    if (i + 1 < n) out[static_cast<std::size_t>(i + 1)] = radius * std::sin(2.0 * kPi * u2);
  }
  return out;
}

ExampleName example_from_string(std::string_view name) {
  for (const auto& [key, value] :
       std::initializer_list<std::pair<std::string_view, ExampleName>>{
           {"ex1-single", ExampleName::ex1_single},
           {"ex2-tri", ExampleName::ex2_tri},
           {"chirp-nonperiodic", ExampleName::chirp_nonperiodic},
           {"incomplete-small", ExampleName::incomplete_small},
           {"incomplete-large", ExampleName::incomplete_large},
           {"sparse-random", ExampleName::sparse_random},
           {"cross", ExampleName::cross},
           {"jump", ExampleName::jump},
           {"ss-pair", ExampleName::ss_pair},
           {"chirp-iteration", ExampleName::chirp_iteration}}) {
    if (key == name) return value;
  }
  throw InvalidInputError("unknown example: " + std::string(name));
}

std::string to_string(ExampleName name) {
  switch (name) {
    case ExampleName::ex1_single: return "ex1-single";
    case ExampleName::ex2_tri: return "ex2-tri";
    case ExampleName::chirp_nonperiodic: return "chirp-nonperiodic";
    case ExampleName::incomplete_small: return "incomplete-small";
    case ExampleName::incomplete_large: return "incomplete-large";
    case ExampleName::sparse_random: return "sparse-random";
    case ExampleName::cross: return "cross";
    case ExampleName::jump: return "jump";
    case ExampleName::ss_pair: return "ss-pair";
    case ExampleName::chirp_iteration: return "chirp-iteration";
  }
  throw InvalidInputError("unknown example enum");
}

std::vector<std::string> example_names() {
  return {"ex1-single",       "ex2-tri", "chirp-nonperiodic", "incomplete-small",
          "incomplete-large", "sparse-random", "cross",       "jump",
          "ss-pair",          "chirp-iteration"};
}

TruthBundle generate(const ExampleSpec& spec) {
  if (spec.n < 64) throw InvalidInputError("generate: n must be at least 64");
  if (spec.noise_amp < 0) throw InvalidInputError("generate: noise_amp must be nonnegative");

  TruthBundle bundle;
  std::vector<AnalyticComponent> comps;
  std::function<double(double)> trend_fn;
  bool periodic = true;
  bool scattered = false;
  std::vector<std::pair<double, double>> gaps;

  switch (spec.name) {
    case ExampleName::ex1_single:
      comps.push_back({[](double) { return 1.0; },
                       [](double t) { return 60 * kPi * t + 15 * std::sin(2 * kPi * t); },
                       [](double t) { return 60 * kPi + 30 * kPi * std::cos(2 * kPi * t); }});
      break;
    case ExampleName::ex2_tri:
      comps.push_back({[](double t) { return 1.0 / (1.5 + std::cos(2 * kPi * t)); },
                       [](double t) { return 60 * kPi * t + 15 * std::sin(2 * kPi * t); },
                       [](double t) { return 60 * kPi + 30 * kPi * std::cos(2 * kPi * t); }});
      comps.push_back({[](double t) { return 1.0 / (1.5 + std::sin(2 * kPi * t)); },
                       [](double t) { return 160 * kPi * t + std::sin(16 * kPi * t); },
                       [](double t) { return 160 * kPi + 16 * kPi * std::cos(16 * kPi * t); }});
      comps.push_back({[](double t) { return 2.0 + std::cos(8 * kPi * t); },
                       [](double t) { return 140 * kPi * (t + 1) * (t + 1); },
                       [](double t) { return 280 * kPi * (t + 1); }});
      break;
    case ExampleName::chirp_nonperiodic:
      periodic = false;
      trend_fn = [](double t) { return 1.0 / (1.5 + std::sin(1.5 * kPi * t)); };
      comps.push_back({[](double t) { return 2 * t + 1; },
                       [](double t) { return 20 * kPi * (t + 1) * (t + 1) + 1; },
                       [](double t) { return 40 * kPi * (t + 1); }});
      comps.push_back(
          {[](double t) { return (2 - t) * (2 - t); },
           [](double t) {
             return 161.4 * kPi * t + 4 * (1 - t) * (1 - t) * std::sin(16 * kPi * t);
           },
           [](double t) {
             return 161.4 * kPi - 8 * (1 - t) * std::sin(16 * kPi * t) +
                    64 * kPi * (1 - t) * (1 - t) * std::cos(16 * kPi * t);
           }});
      break;
    case ExampleName::incomplete_small:
    case ExampleName::incomplete_large: {
      periodic = false;
      scattered = true;
      const double lo = spec.name == ExampleName::incomplete_small ? 0.4 : 0.3;
      const double hi = spec.name == ExampleName::incomplete_small ? 0.6 : 0.7;
      gaps.emplace_back(lo, hi);
      comps.push_back({[](double t) { return 2.0 + std::cos(2 * kPi * t); },
                       [](double t) { return 120 * kPi * t + 10 * std::cos(4 * kPi * t); },
                       [](double t) { return 120 * kPi - 40 * kPi * std::sin(4 * kPi * t); }});
      break;
    }
    case ExampleName::sparse_random:
      periodic = false;
      scattered = true;
      comps.push_back({[](double t) { return 2.0 + std::cos(2 * kPi * t); },
                       [](double t) { return 120 * kPi * t + 10 * std::cos(2 * kPi * t); },
                       [](double t) { return 120 * kPi - 20 * kPi * std::sin(2 * kPi * t); }});
      break;
    case ExampleName::cross:
      comps.push_back({[](double) { return 1.0; },
                       [](double t) { return 40 * kPi * t; },
                       [](double) { return 40 * kPi; }});
      comps.push_back(
          {[](double) { return 1.0; },
           [](double t) { return 20 * kPi * t + 40 * kPi * t * t + std::sin(2 * kPi * t); },
           [](double t) { return 20 * kPi + 80 * kPi * t + 2 * kPi * std::cos(2 * kPi * t); }});
      break;
    case ExampleName::jump:
      trend_fn = [](double t) { return 1.0 / (1.5 + std::cos(2 * kPi * t)); };
      comps.push_back({[](double) { return 1.0; },
                       [](double t) {
                         return t <= 0.3 ? 40 * kPi * t : 12 * kPi + 60 * kPi * (t - 0.3);
                       },
                       [](double t) { return t <= 0.3 ? 40 * kPi : 60 * kPi; }});
      comps.push_back({[](double) { return 1.0; },
                       [](double t) {
                         return t <= 0.6 ? 140 * kPi * t : 84 * kPi + 160 * kPi * (t - 0.6);
                       },
                       [](double t) { return t <= 0.6 ? 140 * kPi : 160 * kPi; }});
      break;
    case ExampleName::ss_pair:
      trend_fn = [](double t) { return 1.0 / (1.1 + std::cos(2 * kPi * t)); };
      comps.push_back({[](double t) { return 1.0 / (1.1 + std::cos(2 * kPi * t)); },
                       [](double t) { return 10 * std::sin(2 * kPi * t) + 40 * kPi * t; },
                       [](double t) { return 20 * kPi * std::cos(2 * kPi * t) + 40 * kPi; }});
      break;
    case ExampleName::chirp_iteration:
      periodic = false;
      comps.push_back({[](double) { return 1.0; },
                       [](double t) { return 10 * kPi * (3 * t + 1) * (3 * t + 1); },
                       [](double t) { return 60 * kPi * (3 * t + 1); }});
      break;
  }

  bundle.grid = Grid{0.0, 1.0, spec.n, periodic};
  for (const auto& c : comps) bundle.components.push_back(sample_component(c, bundle.grid));
  if (trend_fn) bundle.trend = sample_fn(trend_fn, bundle.grid);
  bundle.clean = assemble_clean(bundle.components, bundle.trend, spec.n);

  if (!scattered) {
    std::vector<double> values = bundle.clean;
    if (spec.noise_amp > 0) {
      const auto noise = white_noise(spec.n, spec.seed);
      for (int i = 0; i < spec.n; ++i)
        values[static_cast<std::size_t>(i)] += spec.noise_amp * noise[static_cast<std::size_t>(i)];
    }
    bundle.signal = make_signal(bundle.grid, std::move(values));
    return bundle;
  }

  // Scattered cases sample the analytic formulas directly.
  std::vector<double> times;
  if (spec.name == ExampleName::sparse_random) {
    constexpr int kSparseSamples = 64;
    std::mt19937_64 rng(spec.seed ^ 0x5c4d1f2e3b9a8761ULL);
    times.resize(kSparseSamples);
    for (double& t : times) t = uniform01(rng);
    std::sort(times.begin(), times.end());
    for (std::size_t i = 1; i < times.size(); ++i) {
      if (times[i] <= times[i - 1]) times[i] = std::nextafter(times[i - 1], 2.0);
    }
  } else {
    for (int i = 0; i < spec.n; ++i) {
      const double t = bundle.grid.at(i);
      bool inside_gap = false;
      for (const auto& [lo, hi] : gaps) inside_gap = inside_gap || (t > lo && t < hi);
      if (!inside_gap) times.push_back(t);
    }
  }

  std::vector<double> values(times.size(), 0.0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (bundle.trend) values[i] += trend_fn(times[i]);
    for (const auto& c : comps) values[i] += c.envelope(times[i]) * std::cos(c.theta(times[i]));
  }
  if (spec.noise_amp > 0) {
    const auto noise = white_noise(static_cast<int>(times.size()), spec.seed);
    for (std::size_t i = 0; i < times.size(); ++i) values[i] += spec.noise_amp * noise[i];
  }
  bundle.samples = make_sampled_signal(0.0, 1.0, std::move(times), std::move(values), gaps);
  return bundle;
}

}  // namespace sparsetf::synth
