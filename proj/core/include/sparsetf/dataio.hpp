// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <variant>

#include "sparsetf/grid.hpp"
#include "sparsetf/pursuit.hpp"
#include "sparsetf/synth.hpp"

namespace sparsetf::io {

using json = nlohmann::ordered_json;

/// CSV with a `t,value` header; missing rows denote gaps.
void write_csv(const std::filesystem::path& path, const Signal& signal);
void write_csv(const std::filesystem::path& path, const SampledSignal& samples);

/// Parses the CSV and classifies it: uniform complete grids come back as
/// Signal, anything else as SampledSignal with gaps inferred from row
/// spacing larger than 1.5x the median.
std::variant<Signal, SampledSignal> read_csv(const std::filesystem::path& path);

json truth_to_json(const synth::TruthBundle& bundle);
synth::TruthBundle truth_from_json(const json& j);

json decomposition_to_json(const Decomposition& decomposition);
Decomposition decomposition_from_json(const json& j);

json evaluation_to_json(const EvaluationReport& report);

/// FNV-1a over the file bytes, as a hex string.
std::string file_hash(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const json& j);
json read_json(const std::filesystem::path& path);

}  // namespace sparsetf::io
