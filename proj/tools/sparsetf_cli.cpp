// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
//
// Command line front end: generate analytic fixtures, decompose signals from
// CSV, and evaluate decompositions against ground truth. Exit codes: 0 on
// success, 2 for usage/input errors, 1 for internal failures.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include "sparsetf/dataio.hpp"
#include "sparsetf/errors.hpp"
#include "sparsetf/pursuit.hpp"
#include "sparsetf/synth.hpp"
#include "sparsetf/version.hpp"

namespace {

using sparsetf::io::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

json base_manifest(const std::string& command, double seconds) {
  json m;
  m["command"] = command;
  m["versions"] = json{{"sparsetf", sparsetf::kVersion}, {"schema", sparsetf::kSchemaVersion}};
  m["duration_seconds"] = seconds;
  return m;
}

struct GenerateOptions {
  std::string example;
  int n = 1024;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_generate(const GenerateOptions& opt) {
  Timer timer;
  sparsetf::synth::ExampleSpec spec;
  spec.name = sparsetf::synth::example_from_string(opt.example);
  spec.n = opt.n;
  spec.noise_amp = opt.noise;
  spec.seed = opt.seed;
  const auto bundle = sparsetf::synth::generate(spec);

  const fs::path csv_path = opt.out + ".csv";
  const fs::path truth_path = opt.out + ".truth.json";
  if (bundle.signal) {
    sparsetf::io::write_csv(csv_path, *bundle.signal);
  } else {
    sparsetf::io::write_csv(csv_path, *bundle.samples);
  }
  sparsetf::io::write_json(truth_path, sparsetf::io::truth_to_json(bundle));

  json manifest = base_manifest("generate", timer.seconds());
  manifest["config"] = json{{"example", opt.example},
                            {"n", opt.n},
                            {"noise", opt.noise},
                            {"seed", opt.seed}};
  manifest["outputs"] = json{{"csv", csv_path.string()}, {"truth", truth_path.string()}};
  manifest["input_hash"] = sparsetf::io::file_hash(csv_path);
  if (opt.noise > 0 && bundle.signal) {
    const sparsetf::Signal clean{bundle.grid, bundle.clean};
    manifest["snr_db"] = sparsetf::snr_db(clean, opt.noise);
  }
  sparsetf::io::write_json(opt.out + ".manifest.json", manifest);
  std::cout << "wrote " << csv_path.string() << " and " << truth_path.string() << "\n";
  return kExitOk;
}

struct DecomposeOptions {
  std::string input;
  std::string out;
  std::string engine = "fft";
  double gamma = -1.0;
  double lambda_v = 0.5;
  int max_imfs = 10;
  double delta = -1.0;
  bool periodic = false;
  bool trend = false;
  int grid_n = 1024;
  std::string config_file;
};

void apply_config_overrides(DecomposeOptions* opt) {
  if (opt->config_file.empty()) return;
  const json cfg = sparsetf::io::read_json(opt->config_file);
  if (cfg.contains("engine")) opt->engine = cfg.at("engine").get<std::string>();
  if (cfg.contains("gamma")) opt->gamma = cfg.at("gamma").get<double>();
  if (cfg.contains("lambda_v")) opt->lambda_v = cfg.at("lambda_v").get<double>();
  if (cfg.contains("max_imfs")) opt->max_imfs = cfg.at("max_imfs").get<int>();
  if (cfg.contains("delta")) opt->delta = cfg.at("delta").get<double>();
  if (cfg.contains("periodic")) opt->periodic = cfg.at("periodic").get<bool>();
  if (cfg.contains("trend")) opt->trend = cfg.at("trend").get<bool>();
  if (cfg.contains("grid_n")) opt->grid_n = cfg.at("grid_n").get<int>();
}

int run_decompose(DecomposeOptions opt) {
  Timer timer;
  apply_config_overrides(&opt);

  sparsetf::PursuitConfig config;
  if (opt.engine == "fft") {
    config.engine = sparsetf::EngineKind::fft;
  } else if (opt.engine == "l1") {
    config.engine = sparsetf::EngineKind::l1;
  } else {
    throw sparsetf::InvalidInputError("unknown engine: " + opt.engine);
  }
  config.gamma = opt.gamma;
  config.max_imfs = opt.max_imfs;
  if (opt.delta >= 0) config.residual_tol = opt.delta;
  config.trend_extraction = opt.trend;
  config.fft.filter.width = opt.lambda_v;
  config.l1.lambda_v = opt.lambda_v;
  config.l1.grid_n = opt.grid_n;

  auto loaded = sparsetf::io::read_csv(opt.input);
  sparsetf::Decomposition decomposition;
  if (std::holds_alternative<sparsetf::SampledSignal>(loaded)) {
    if (config.engine == sparsetf::EngineKind::fft) {
      std::cerr << "input has gaps or nonuniform sampling; use --engine l1\n";
      return kExitUsage;
    }
    decomposition = sparsetf::decompose(std::get<sparsetf::SampledSignal>(loaded), config);
  } else {
    auto signal = std::get<sparsetf::Signal>(loaded);
    if (opt.periodic) {
      // reinterpret the uniform record as one period
      const double h = signal.grid.dt();
      signal.grid.periodic = true;
      signal.grid.t1 += h;
    }
    decomposition = sparsetf::decompose(signal, config);
  }

  sparsetf::io::write_json(opt.out, sparsetf::io::decomposition_to_json(decomposition));

  json manifest = base_manifest("decompose", timer.seconds());
  manifest["config"] = json{{"engine", opt.engine},   {"gamma", opt.gamma},
                            {"lambda_v", opt.lambda_v}, {"max_imfs", opt.max_imfs},
                            {"delta", opt.delta},     {"periodic", opt.periodic},
                            {"trend", opt.trend},     {"grid_n", opt.grid_n}};
  manifest["input"] = opt.input;
  manifest["input_hash"] = sparsetf::io::file_hash(opt.input);
  manifest["components"] = decomposition.components.size();
  for (const auto& d : decomposition.diagnostics) {
    if (!d.converged) manifest["non_converged_components"] = true;
  }
  sparsetf::io::write_json(opt.out + ".manifest.json", manifest);
  std::cout << "decomposed into " << decomposition.components.size() << " component(s)\n";
  return kExitOk;
}

struct EvaluateOptions {
  std::string decomposition;
  std::string truth;
  std::string out;
};

int run_evaluate(const EvaluateOptions& opt) {
  Timer timer;
  const auto decomposition =
      sparsetf::io::decomposition_from_json(sparsetf::io::read_json(opt.decomposition));
  const auto bundle = sparsetf::io::truth_from_json(sparsetf::io::read_json(opt.truth));
  const auto report = sparsetf::evaluate_against_truth(decomposition, bundle.components);

  json out = sparsetf::io::evaluation_to_json(report);
  out["manifest"] = base_manifest("evaluate", timer.seconds());
  out["manifest"]["inputs"] = json{{"decomposition", opt.decomposition}, {"truth", opt.truth}};
  out["manifest"]["input_hash"] = sparsetf::io::file_hash(opt.decomposition);
  sparsetf::io::write_json(opt.out, out);

  std::cout << "matched " << report.matched.size() << " component(s), " << report.unmatched_truth
            << " truth / " << report.unmatched_decomposition << " decomposition unmatched\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse time-frequency decomposition"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "write an analytic fixture as CSV + truth JSON");
  generate->add_option("--example", gen.example, "fixture name")->required();
  generate->add_option("--n", gen.n, "grid size");
  generate->add_option("--noise", gen.noise, "white noise amplitude");
  generate->add_option("--seed", gen.seed, "noise seed");
  generate->add_option("-o,--out", gen.out, "output prefix")->required();

  DecomposeOptions dec;
  auto* decompose = app.add_subcommand("decompose", "decompose a CSV signal into IMFs");
  decompose->add_option("--input,-i", dec.input, "input CSV")->required();
  decompose->add_option("-o,--out", dec.out, "output decomposition JSON")->required();
  decompose->add_option("--engine", dec.engine, "fft or l1");
  decompose->add_option("--gamma", dec.gamma, "l1 weight (negative = engine default)");
  decompose->add_option("--lambda-v", dec.lambda_v, "filter width / basis smoothness");
  decompose->add_option("--max-imfs", dec.max_imfs, "component cap");
  decompose->add_option("--delta", dec.delta, "residual tolerance (negative = default)");
  decompose->add_flag("--periodic", dec.periodic, "treat the uniform record as one period");
  decompose->add_flag("--trend", dec.trend, "extract the low-pass trend from the residual");
  decompose->add_option("--grid-n", dec.grid_n, "reconstruction grid for scattered input");
  decompose->add_option("--config", dec.config_file, "JSON file overriding any flag");

  EvaluateOptions ev;
  auto* evaluate = app.add_subcommand("evaluate", "compare a decomposition against truth JSON");
  evaluate->add_option("--decomposition,-d", ev.decomposition, "decomposition JSON")->required();
  evaluate->add_option("--truth,-t", ev.truth, "truth JSON")->required();
  evaluate->add_option("-o,--out", ev.out, "metrics JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (generate->parsed()) return run_generate(gen);
    if (decompose->parsed()) return run_decompose(dec);
    if (evaluate->parsed()) return run_evaluate(ev);
    return kExitUsage;
  } catch (const sparsetf::InvalidInputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sparsetf::NoOscillationError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}
