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

#ifndef PFRESAMPLE_BENCH_HPP
#define PFRESAMPLE_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfresample/resamplers.hpp"
#include "pfresample/types.hpp"

/**
 * \file
 * \brief Benchmark harness over a grid of particle counts and observations.
 *
 * Each cell simulates a Gaussian weight set, then times the resampler up to
 * the delivery of an in-place safe ancestry vector: cumulative offspring is
 * converted to ancestors where needed, and every ancestry is passed through
 * permute_parallel() before the clock stops. Weight generation is not timed.
 */

namespace pfresample {

enum class precision { f32, f64 };

std::string_view to_string(precision p) noexcept;
std::optional<precision> parse_precision(std::string_view name) noexcept;

struct cell_options {
  /// Metropolis epsilon as a fraction of p*.
  double epsilon_factor = 1e-2;
  /// Rejection-capped cap sup_v as a fraction of sup w.
  double cap_fraction = 0.5;
  /// Sort the weights ascending inside the timed region before resampling.
  bool sort_weights = false;
};

struct bench_record {
  resampler_kind algorithm = resampler_kind::multinomial;
  std::size_t n = 0;
  double y = 0.0;
  std::size_t replicate = 0;
  std::int64_t elapsed_ns = 0;
  double mse = 0.0;
  /// Per-algorithm metadata, e.g. {"B", "35"} for Metropolis.
  std::vector<std::pair<std::string, std::string>> extras;
  /// Set when the cell failed; the other measurements are then meaningless.
  std::optional<std::string> error;

  [[nodiscard]] std::optional<std::string> extra(std::string_view key) const;
};

/// Runs and times one cell. Errors propagate as exceptions naming the cell.
/**
 * The weight set depends on (seed, n, y, replicate) only, so every algorithm
 * sees the same weights; the resampler's draws additionally depend on the
 * algorithm. \p ancestry_out, when given, receives the delivered ancestry.
 */
bench_record run_cell(resampler_kind algorithm, std::size_t n, double y, std::size_t replicate, precision prec,
                      std::uint64_t seed, const cell_options& options = {}, ancestry_vector* ancestry_out = nullptr);

struct bench_config {
  std::vector<resampler_kind> algorithms{std::begin(kAllResamplers), std::end(kAllResamplers)};
  std::vector<std::size_t> n_values;
  std::vector<double> y_values;
  std::size_t replicates = 500;
  precision prec = precision::f32;
  std::uint64_t seed = 1;
  cell_options options;
  std::size_t workers = 1;

  /// N = 2^4, ..., 2^20; y = 0, 0.5, ..., 4.
  static bench_config defaults();
  /// Throws std::invalid_argument on an empty grid, N < 2 or zero replicates.
  void validate() const;
};

/// Runs the full grid, ordered by algorithm (as listed in kAllResamplers), N, y, replicate.
/**
 * (algorithm, N, y) groups run concurrently on up to config.workers threads,
 * each preceded by one discarded warm-up replicate. A failing cell yields a
 * record with error set; the remaining cells still run.
 */
std::vector<bench_record> run_grid(const bench_config& config);

/// Parses a particle-count list such as "16,64" or "2^4..2^20" (a range doubles from its start).
std::vector<std::size_t> parse_n_list(std::string_view text);

/// Parses an observation list such as "0,1.5" or "0..4" or "0..4:0.25" (default step 0.5).
std::vector<double> parse_y_list(std::string_view text);

/// Shortest decimal representation that round-trips.
std::string format_real(double value);

/// CSV with header algorithm,N,y,replicate,elapsed_ns,mse,extras.
void write_csv(std::ostream& out, std::span<const bench_record> records);
std::vector<bench_record> read_csv(std::istream& in);

struct rmse_row {
  resampler_kind algorithm = resampler_kind::multinomial;
  std::size_t n = 0;
  double y = 0.0;
  std::size_t replicates = 0;
  double rmse = 0.0;
  double mean_elapsed_ns = 0.0;
};

/// sqrt(mean(mse)) per (algorithm, N, y), skipping failed records.
/// Throws std::invalid_argument if there is nothing to aggregate.
std::vector<rmse_row> aggregate_rmse(std::span<const bench_record> records);

/// CSV with header algorithm,N,y,replicates,rmse,mean_elapsed_ns.
void write_rmse_csv(std::ostream& out, std::span<const rmse_row> rows);

}  // namespace pfresample

#endif
