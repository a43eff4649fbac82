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

// `pf demo` runs the bootstrap particle filter on simulated data from a
// scalar linear-Gaussian model and writes the filtered means next to the
// exact Kalman means.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "pfresample/bench.hpp"
#include "pfresample/pf.hpp"

int main(int argc, char** argv) {
  using namespace pfresample;

  CLI::App app{"Bootstrap particle filter demo"};
  app.require_subcommand(1);
  auto* demo = app.add_subcommand("demo", "Filter a simulated series and compare with the exact filter");

  std::string resampler = "systematic";
  std::size_t particles = 1000;
  std::size_t steps = 50;
  std::uint64_t seed = 1;
  std::string out_path;
  double threshold = 0.5;
  linear_gaussian_model model;
  demo->add_option("--resampler", resampler, "Resampler name");
  demo->add_option("--n", particles, "Number of particles")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 30));
  demo->add_option("--steps", steps, "Number of time steps")->check(CLI::PositiveNumber);
  demo->add_option("--seed", seed, "Seed for data and filter");
  demo->add_option("--out", out_path, "Output CSV")->required();
  demo->add_option("--ess-threshold", threshold, "Resample when ESS/N falls below this")->check(CLI::Range(0.0, 1.0));
  demo->add_option("--coefficient", model.coefficient, "Transition coefficient");
  demo->add_option("--transition-std", model.transition_std, "Transition noise std");
  demo->add_option("--observation-std", model.observation_std, "Observation noise std");
  demo->add_option("--initial-mean", model.initial_mean, "Initial mean");
  demo->add_option("--initial-std", model.initial_std, "Initial std");
  CLI11_PARSE(app, argc, argv);

  const auto kind = parse_resampler_kind(resampler);
  if (!kind) {
    std::cerr << "pf: unknown resampler '" << resampler << "'\n";
    return 2;
  }
  try {
    const auto series = simulate_series(model, steps, seed);
    const auto oracle = kalman_filter(model, series.observations);
    pf_options options;
    options.particles = particles;
    options.resampler = *kind;
    options.ess_threshold = threshold;
    options.seed = mix_seed(seed, {42});
    const auto result = pf_run(model, series.observations, options);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "pf: cannot open " << out_path << '\n';
      return 2;
    }
    out << "time,filtered_mean,ess,resampled,oracle_mean\n";
    for (std::size_t t = 0; t < result.steps.size(); ++t) {
      const auto& s = result.steps[t];
      out << s.time << ',' << format_real(s.filtered_mean) << ',' << format_real(s.ess) << ','
          << (s.resampled ? 1 : 0) << ',' << format_real(oracle.means[t]) << '\n';
    }
    std::cout << "log-likelihood " << format_real(result.log_likelihood) << " (exact "
              << format_real(oracle.log_likelihood) << ")\n";
  } catch (const std::exception& e) {
    std::cerr << "pf: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
