// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include "sparsetf/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sparsetf/component.hpp"
#include "sparsetf/errors.hpp"

namespace sparsetf::io {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_rows(std::ofstream& out, std::span<const double> times,
                std::span<const double> values) {
  out << "t,value\n";
  for (std::size_t i = 0; i < times.size(); ++i)
    out << format_double(times[i]) << ',' << format_double(values[i]) << '\n';
}

json grid_to_json(const Grid& grid) {
  return json{{"t0", grid.t0}, {"t1", grid.t1}, {"n", grid.n}, {"periodic", grid.periodic}};
}

Grid grid_from_json(const json& j) {
  return Grid{j.at("t0").get<double>(), j.at("t1").get<double>(), j.at("n").get<int>(),
              j.at("periodic").get<bool>()};
}

json component_to_json(const TruthComponent& c) {
  return json{{"envelope", c.envelope}, {"theta", c.phase.theta}, {"omega", c.phase.omega}};
}

TruthComponent component_from_json(const json& j) {
  TruthComponent c;
  c.envelope = j.at("envelope").get<std::vector<double>>();
  c.phase.theta = j.at("theta").get<std::vector<double>>();
  c.phase.omega = j.at("omega").get<std::vector<double>>();
  return c;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void write_csv(const std::filesystem::path& path, const Signal& signal) {
  auto out = open_out(path);
  write_rows(out, signal.grid.times(), signal.values);
}

void write_csv(const std::filesystem::path& path, const SampledSignal& samples) {
  auto out = open_out(path);
  write_rows(out, samples.times, samples.values);
}

std::variant<Signal, SampledSignal> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InvalidInputError("csv: empty file");
  // header must be t,value (tolerate surrounding whitespace)
  {
    std::string squeezed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) squeezed += c;
    if (squeezed != "t,value") throw InvalidInputError("csv: expected 't,value' header");
  }
  std::vector<double> times, values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b))
      throw InvalidInputError("csv: malformed row at line " + std::to_string(line_no));
    try {
      times.push_back(std::stod(a));
      values.push_back(std::stod(b));
    } catch (const std::exception&) {
      throw InvalidInputError("csv: malformed number at line " + std::to_string(line_no));
    }
  }
  if (times.size() < 8) throw InvalidInputError("csv: need at least 8 rows");

  std::vector<double> dts(times.size() - 1);
  for (std::size_t i = 0; i + 1 < times.size(); ++i) dts[i] = times[i + 1] - times[i];
  std::vector<double> sorted = dts;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median_dt = sorted[sorted.size() / 2];
  if (!(median_dt > 0)) throw InvalidInputError("csv: times must increase");

  bool uniform = true;
  std::vector<std::pair<double, double>> gaps;
  for (std::size_t i = 0; i < dts.size(); ++i) {
    if (dts[i] > 1.5 * median_dt) {
      uniform = false;
      gaps.emplace_back(times[i], times[i + 1]);
    } else if (std::abs(dts[i] - median_dt) > 1e-6 * median_dt) {
      uniform = false;
    }
  }
  if (uniform) {
    Grid grid{times.front(), times.back(), static_cast<int>(times.size()), false};
    return make_signal(grid, std::move(values));
  }
  return make_sampled_signal(times.front(), times.back(), std::move(times), std::move(values),
                             std::move(gaps));
}

json truth_to_json(const synth::TruthBundle& bundle) {
  json j;
  j["schema"] = "1";
  j["grid"] = grid_to_json(bundle.grid);
  j["components"] = json::array();
  for (const auto& c : bundle.components) j["components"].push_back(component_to_json(c));
  if (bundle.trend) j["trend"] = *bundle.trend;
  j["clean"] = bundle.clean;
  if (bundle.signal) j["signal"] = json{{"values", bundle.signal->values}};
  if (bundle.samples) {
    json gaps = json::array();
    for (const auto& [lo, hi] : bundle.samples->gaps) gaps.push_back(json::array({lo, hi}));
    j["samples"] = json{{"times", bundle.samples->times},
                        {"values", bundle.samples->values},
                        {"gaps", gaps}};
  }
  return j;
}

synth::TruthBundle truth_from_json(const json& j) {
  synth::TruthBundle bundle;
  bundle.grid = grid_from_json(j.at("grid"));
  for (const auto& c : j.at("components")) bundle.components.push_back(component_from_json(c));
  if (j.contains("trend")) bundle.trend = j.at("trend").get<std::vector<double>>();
  bundle.clean = j.at("clean").get<std::vector<double>>();
  if (j.contains("signal")) {
    bundle.signal = make_signal(bundle.grid, j.at("signal").at("values").get<std::vector<double>>());
  }
  if (j.contains("samples")) {
    const auto& s = j.at("samples");
    std::vector<std::pair<double, double>> gaps;
    for (const auto& g : s.at("gaps")) gaps.emplace_back(g.at(0).get<double>(), g.at(1).get<double>());
    bundle.samples = make_sampled_signal(bundle.grid.t0, bundle.grid.t1,
                                         s.at("times").get<std::vector<double>>(),
                                         s.at("values").get<std::vector<double>>(), gaps);
  }
  return bundle;
}

json decomposition_to_json(const Decomposition& d) {
  json j;
  j["imfs"] = json::array();
  for (const auto& c : d.components) {
    j["imfs"].push_back(json{{"envelope", c.envelope},
                             {"theta", c.phase.theta},
                             {"omega", c.phase.omega},
                             {"reconstruction", c.reconstruction}});
  }
  j["residual"] = d.residual;
  if (d.trend) j["trend"] = *d.trend;

  json diag;
  diag["schema"] = "1";
  diag["grid"] = grid_to_json(d.grid);
  diag["components"] = json::array();
  for (const auto& c : d.diagnostics) {
    diag["components"].push_back(json{{"iterations", c.iterations},
                                      {"converged", c.converged},
                                      {"guess_bin", c.guess_bin},
                                      {"mean_omega", c.mean_omega},
                                      {"residual_norm_after", c.residual_norm_after}});
  }
  if (d.separation) {
    json sep;
    sep["epsilon"] = d.separation->epsilon;
    sep["epsilon_per_component"] = d.separation->epsilon_per_component;
    if (std::isfinite(d.separation->d)) sep["d"] = d.separation->d;
    diag["separation"] = std::move(sep);
  }
  if (!d.sample_times.empty()) {
    diag["sample_times"] = d.sample_times;
    diag["sample_residual"] = d.sample_residual;
  }
  j["diagnostics"] = std::move(diag);
  return j;
}

Decomposition decomposition_from_json(const json& j) {
  Decomposition d;
  const auto& diag = j.at("diagnostics");
  d.grid = grid_from_json(diag.at("grid"));
  for (const auto& c : j.at("imfs")) {
    IMFComponent comp;
    comp.envelope = c.at("envelope").get<std::vector<double>>();
    comp.phase.theta = c.at("theta").get<std::vector<double>>();
    comp.phase.omega = c.at("omega").get<std::vector<double>>();
    comp.reconstruction = c.at("reconstruction").get<std::vector<double>>();
    d.components.push_back(std::move(comp));
  }
  d.residual = j.at("residual").get<std::vector<double>>();
  if (j.contains("trend")) d.trend = j.at("trend").get<std::vector<double>>();
  for (const auto& c : diag.at("components")) {
    ComponentDiagnostics cd;
    cd.iterations = c.at("iterations").get<int>();
    cd.converged = c.at("converged").get<bool>();
    cd.guess_bin = c.at("guess_bin").get<int>();
    cd.mean_omega = c.at("mean_omega").get<double>();
    cd.residual_norm_after = c.at("residual_norm_after").get<double>();
    d.diagnostics.push_back(cd);
  }
  if (diag.contains("sample_times")) {
    d.sample_times = diag.at("sample_times").get<std::vector<double>>();
    d.sample_residual = diag.at("sample_residual").get<std::vector<double>>();
  }
  return d;
}

json evaluation_to_json(const EvaluationReport& report) {
  json j;
  j["matched"] = json::array();
  for (const auto& e : report.matched) {
    j["matched"].push_back(json{{"truth_index", e.truth_index},
                                {"decomp_index", e.decomp_index},
                                {"recon_rel_l2_full", e.recon_rel_l2_full},
                                {"recon_rel_l2_interior", e.recon_rel_l2_interior},
                                {"omega_rel_sup_full", e.omega_rel_sup_full},
                                {"omega_rel_sup_interior", e.omega_rel_sup_interior},
                                {"omega_rel_l2_full", e.omega_rel_l2_full},
                                {"omega_rel_l2_interior", e.omega_rel_l2_interior}});
  }
  j["unmatched_truth"] = report.unmatched_truth;
  j["unmatched_decomposition"] = report.unmatched_decomposition;
  return j;
}

std::string file_hash(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot read " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_json(const std::filesystem::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot read " + path.string());
  return json::parse(in);
}

}  // namespace sparsetf::io
