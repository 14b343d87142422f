// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sparsetf/grid.hpp"
#include "sparsetf/pursuit.hpp"

namespace sparsetf::synth {

enum class ExampleName {
  ex1_single,
  ex2_tri,
  chirp_nonperiodic,
  incomplete_small,
  incomplete_large,
  sparse_random,
  cross,
  jump,
  ss_pair,
  chirp_iteration,
};

ExampleName example_from_string(std::string_view name);  // throws on unknown
std::string to_string(ExampleName name);
std::vector<std::string> example_names();

struct ExampleSpec {
  ExampleName name = ExampleName::ex1_single;
  int n = 1024;
  double noise_amp = 0.0;
  std::uint64_t seed = 0;
};

/// Analytic signal plus ground truth. Exactly one of signal/samples is set;
/// components (and trend) always live on the uniform truth grid, and
/// clean + noise reproduces the observed values exactly.
struct TruthBundle {
  std::optional<Signal> signal;
  std::optional<SampledSignal> samples;
  Grid grid;
  std::vector<TruthComponent> components;
  std::optional<std::vector<double>> trend;
  std::vector<double> clean;  // noise-free values on the truth grid
};

TruthBundle generate(const ExampleSpec& spec);

/// Seeded standard normal draws (Box-Muller over a 64-bit generator, so the
/// stream is identical across platforms).
std::vector<double> white_noise(int n, std::uint64_t seed);

}  // namespace sparsetf::synth
