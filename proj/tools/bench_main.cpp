// Copyright 2026 The pfresample Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Benchmark harness: `bench run` times every cell of a grid and writes one CSV
// row per replicate; `bench aggregate` reduces such a file to an RMSE table.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "pfresample/bench.hpp"

namespace {

using namespace pfresample;

int run(const std::string& algorithms, const std::string& n_list, const std::string& y_list, std::size_t reps,
        const std::string& prec, std::uint64_t seed, const std::string& out_path, std::size_t workers,
        double epsilon_factor, double cap_fraction, bool sort) {
  auto config = bench_config::defaults();
  if (!algorithms.empty()) {
    config.algorithms.clear();
    std::size_t start = 0;
    while (start <= algorithms.size()) {
      const auto comma = algorithms.find(',', start);
      const auto name = algorithms.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      const auto kind = parse_resampler_kind(name);
      if (!kind) {
        std::cerr << "bench: unknown algorithm '" << name << "'\n";
        return 2;
      }
      config.algorithms.push_back(*kind);
      if (comma == std::string::npos) {
        break;
      }
      start = comma + 1;
    }
  }
  if (!n_list.empty()) {
    config.n_values = parse_n_list(n_list);
  }
  if (!y_list.empty()) {
    config.y_values = parse_y_list(y_list);
  }
  const auto p = parse_precision(prec);
  if (!p) {
    std::cerr << "bench: precision must be f32 or f64\n";
    return 2;
  }
  config.prec = *p;
  config.replicates = reps;
  config.seed = seed;
  config.workers = workers;
  config.options.epsilon_factor = epsilon_factor;
  config.options.cap_fraction = cap_fraction;
  config.options.sort_weights = sort;

  const auto records = run_grid(config);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "bench: cannot open " << out_path << '\n';
    return 2;
  }
  write_csv(out, records);
  std::size_t failed = 0;
  for (const auto& r : records) {
    if (r.error) {
      ++failed;
      std::cerr << "bench: " << *r.error << '\n';
    }
  }
  return failed == 0 ? 0 : 1;
}

int aggregate(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) {
    std::cerr << "bench: cannot open " << in_path << '\n';
    return 2;
  }
  const auto records = read_csv(in);
  const auto rows = aggregate_rmse(records);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "bench: cannot open " << out_path << '\n';
    return 2;
  }
  write_rmse_csv(out, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Particle-filter resampling benchmark"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Time resamplers over a grid of N and y");
  std::string algorithms;
  std::string n_list;
  std::string y_list;
  std::size_t reps = 500;
  std::string prec = "f32";
  std::uint64_t seed = 1;
  std::string out_path;
  std::size_t workers = 1;
  double epsilon_factor = 1e-2;
  double cap_fraction = 0.5;
  bool sort = false;
  run_cmd->add_option("--algorithms", algorithms, "Comma-separated list (default: all)");
  run_cmd->add_option("--n", n_list, "Particle counts, e.g. 2^4..2^20 (default) or 64,256");
  run_cmd->add_option("--y", y_list, "Observations, e.g. 0..4 (default) or 0..4:0.25 or 1,3");
  run_cmd->add_option("--reps", reps, "Weight sets per cell")->check(CLI::PositiveNumber);
  run_cmd->add_option("--precision", prec, "f32 or f64");
  run_cmd->add_option("--seed", seed, "Master seed");
  run_cmd->add_option("--out", out_path, "Output CSV")->required();
  run_cmd->add_option("--workers", workers, "Concurrent cells")->check(CLI::PositiveNumber);
  run_cmd->add_option("--epsilon-factor", epsilon_factor, "Metropolis epsilon as a fraction of p*");
  run_cmd->add_option("--cap-fraction", cap_fraction, "rejection-capped cap as a fraction of sup w");
  run_cmd->add_flag("--sort-weights", sort, "Include an ascending weight sort in the timed region");

  auto* agg_cmd = app.add_subcommand("aggregate", "Reduce a run CSV to RMSE per (algorithm, N, y)");
  std::string in_path;
  std::string agg_out;
  agg_cmd->add_option("--in", in_path, "Run CSV")->required();
  agg_cmd->add_option("--out", agg_out, "RMSE CSV")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (run_cmd->parsed()) {
      return run(algorithms, n_list, y_list, reps, prec, seed, out_path, workers, epsilon_factor, cap_fraction, sort);
    }
    return aggregate(in_path, agg_out);
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << '\n';
    return 2;
  }
}
