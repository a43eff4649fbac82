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

#include "pfresample/bench.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "pfresample/ancestry.hpp"
#include "pfresample/diagnostics.hpp"

namespace pfresample {

namespace {

constexpr std::string_view kCsvHeader = "algorithm,N,y,replicate,elapsed_ns,mse,extras";

struct delivery {
  ancestry_vector ancestry;
  std::vector<double> importance;  // empty unless the outcome is weighted
  std::vector<std::pair<std::string, std::string>> extras;
};

template <class Real>
delivery resample_and_permute(resampler_kind algorithm, std::span<const Real> weights, double y,
                              const rng_stream& rng, const cell_options& options) {
  const auto n = weights.size();
  delivery out;
  switch (algorithm) {
    case resampler_kind::multinomial:
      out.ancestry = multinomial_ancestors(weights, rng);
      break;
    case resampler_kind::multinomial_serial:
      out.ancestry = multinomial_ancestors_serial(weights, rng);
      break;
    case resampler_kind::stratified:
      out.ancestry = cumulative_offspring_to_ancestors(stratified_cumulative_offspring(weights, rng));
      break;
    case resampler_kind::systematic:
      out.ancestry = cumulative_offspring_to_ancestors(systematic_cumulative_offspring(weights, rng));
      break;
    case resampler_kind::metropolis: {
      const auto config = metropolis_config::from_bound(max_normalised_weight(y, n), n,
                                                        max_normalised_weight(y, n) * options.epsilon_factor);
      out.ancestry = metropolis_ancestors(weights, config.steps, rng);
      out.extras = {{"B", std::to_string(config.steps)},
                    {"p_star", format_real(config.p_star)},
                    {"epsilon", format_real(config.epsilon)}};
      break;
    }
    case resampler_kind::rejection: {
      rejection_stats stats;
      out.ancestry = rejection_ancestors(weights, sup_weight<Real>(), rng, &stats);
      out.extras = {{"mean_trips", format_real(static_cast<double>(stats.proposals) / static_cast<double>(n))}};
      break;
    }
    case resampler_kind::rejection_capped: {
      rejection_stats stats;
      const auto cap = static_cast<Real>(options.cap_fraction * sup_weight<double>());
      auto result = rejection_ancestors_capped(weights, cap, rng, &stats);
      out.ancestry = std::move(result.ancestry);
      out.importance.assign(result.weights.begin(), result.weights.end());
      out.extras = {{"mean_trips", format_real(static_cast<double>(stats.proposals) / static_cast<double>(n))},
                    {"sup_v", format_real(static_cast<double>(cap))}};
      break;
    }
  }
  out.ancestry = permute_parallel(out.ancestry);
  if (!out.importance.empty()) {
    // The importance weight is a function of the parent alone, so it follows
    // the permuted slots directly.
    const auto cap = static_cast<Real>(options.cap_fraction * sup_weight<double>());
    for (std::size_t i = 0; i < n; ++i) {
      const Real w = weights[out.ancestry[i]];
      out.importance[i] = static_cast<double>(w / std::min(w, cap));
    }
  }
  return out;
}

template <class Real>
bench_record run_cell_typed(resampler_kind algorithm, std::size_t n, double y, std::size_t replicate,
                            std::uint64_t seed, const cell_options& options, ancestry_vector* ancestry_out) {
  const auto y_bits = std::bit_cast<std::uint64_t>(y);
  auto weights = simulate_weight_set<Real>({n, y, mix_seed(seed, {n, y_bits, replicate})});
  const rng_stream rng{mix_seed(seed, {static_cast<std::uint64_t>(algorithm) + 1, n, y_bits, replicate}), 0};

  const auto start = std::chrono::steady_clock::now();
  if (options.sort_weights) {
    weights = sort_weights(std::span<const Real>{weights});
  }
  const std::span<const Real> view{weights};
  auto delivered = resample_and_permute(algorithm, view, y, rng, options);
  const auto stop = std::chrono::steady_clock::now();
  assert(is_in_place_safe(delivered.ancestry));

  bench_record record;
  record.algorithm = algorithm;
  record.n = n;
  record.y = y;
  record.replicate = replicate;
  record.elapsed_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
  if (delivered.importance.empty()) {
    record.mse = resampling_mse(ancestors_to_offspring(delivered.ancestry), view);
  } else {
    // Weighted outcome: each offspring counts in proportion to its importance weight.
    double total = 0.0;
    for (const double v : delivered.importance) {
      total += v;
    }
    std::vector<double> counts(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      counts[delivered.ancestry[i]] += static_cast<double>(n) * delivered.importance[i] / total;
    }
    record.mse = resampling_mse(std::span<const double>{counts}, view);
  }
  record.extras = std::move(delivered.extras);
  if (options.sort_weights) {
    record.extras.emplace_back("sorted", "1");
  }
  if (ancestry_out != nullptr) {
    *ancestry_out = std::move(delivered.ancestry);
  }
  return record;
}

std::string describe_cell(resampler_kind algorithm, std::size_t n, double y, std::size_t replicate) {
  std::ostringstream s;
  s << "cell (" << to_string(algorithm) << ", N=" << n << ", y=" << format_real(y) << ", replicate=" << replicate
    << ")";
  return s.str();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    fields.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) {
      return fields;
    }
    start = pos + 1;
  }
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("csv: cannot parse " + std::string{what} + " from '" + std::string{text} + "'");
  }
  return value;
}

}  // namespace

std::string_view to_string(precision p) noexcept { return p == precision::f32 ? "f32" : "f64"; }

std::optional<precision> parse_precision(std::string_view name) noexcept {
  if (name == "f32") {
    return precision::f32;
  }
  if (name == "f64") {
    return precision::f64;
  }
  return std::nullopt;
}

std::optional<std::string> bench_record::extra(std::string_view key) const {
  for (const auto& [k, v] : extras) {
    if (k == key) {
      return v;
    }
  }
  return std::nullopt;
}

bench_record run_cell(resampler_kind algorithm, std::size_t n, double y, std::size_t replicate, precision prec,
                      std::uint64_t seed, const cell_options& options, ancestry_vector* ancestry_out) {
  try {
    if (prec == precision::f32) {
      return run_cell_typed<float>(algorithm, n, y, replicate, seed, options, ancestry_out);
    }
    return run_cell_typed<double>(algorithm, n, y, replicate, seed, options, ancestry_out);
  } catch (const std::exception& e) {
    throw std::runtime_error(describe_cell(algorithm, n, y, replicate) + ": " + e.what());
  }
}

bench_config bench_config::defaults() {
  bench_config config;
  for (unsigned k = 4; k <= 20; ++k) {
    config.n_values.push_back(std::size_t{1} << k);
  }
  for (int k = 0; k <= 8; ++k) {
    config.y_values.push_back(0.5 * k);
  }
  return config;
}

void bench_config::validate() const {
  if (algorithms.empty() || n_values.empty() || y_values.empty()) {
    throw std::invalid_argument("bench config: empty grid");
  }
  if (replicates == 0) {
    throw std::invalid_argument("bench config: at least one replicate required");
  }
  if (std::any_of(n_values.begin(), n_values.end(), [](std::size_t n) { return n < 2; })) {
    throw std::invalid_argument("bench config: every N must be at least 2");
  }
  if (workers == 0) {
    throw std::invalid_argument("bench config: at least one worker required");
  }
}

std::vector<bench_record> run_grid(const bench_config& config) {
  config.validate();
  auto algorithms = config.algorithms;
  std::sort(algorithms.begin(), algorithms.end());
  algorithms.erase(std::unique(algorithms.begin(), algorithms.end()), algorithms.end());
  auto n_values = config.n_values;
  std::sort(n_values.begin(), n_values.end());
  n_values.erase(std::unique(n_values.begin(), n_values.end()), n_values.end());
  auto y_values = config.y_values;
  std::sort(y_values.begin(), y_values.end());
  y_values.erase(std::unique(y_values.begin(), y_values.end()), y_values.end());

  struct group {
    resampler_kind algorithm;
    std::size_t n;
    double y;
  };
  std::vector<group> groups;
  for (const auto a : algorithms) {
    for (const auto n : n_values) {
      for (const auto y : y_values) {
        groups.push_back({a, n, y});
      }
    }
  }

  const auto reps = config.replicates;
  std::vector<bench_record> records(groups.size() * reps);
  const auto ng = static_cast<std::ptrdiff_t>(groups.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(config.workers))
  for (std::ptrdiff_t gi = 0; gi < ng; ++gi) {
    const auto& g = groups[static_cast<std::size_t>(gi)];
    try {
      (void)run_cell(g.algorithm, g.n, g.y, 0, config.prec, config.seed, config.options);
    } catch (const std::exception&) {
      // The failure is reported by the measured replicate below.
    }
    for (std::size_t r = 0; r < reps; ++r) {
      auto& slot = records[static_cast<std::size_t>(gi) * reps + r];
      try {
        slot = run_cell(g.algorithm, g.n, g.y, r, config.prec, config.seed, config.options);
      } catch (const std::exception& e) {
        slot = bench_record{};
        slot.algorithm = g.algorithm;
        slot.n = g.n;
        slot.y = g.y;
        slot.replicate = r;
        slot.error = e.what();
      }
    }
  }
  return records;
}

namespace {

std::size_t parse_count(std::string_view item) {
  if (item.starts_with("2^")) {
    const auto k = parse_number<unsigned>(item.substr(2), "exponent");
    if (k >= 63) {
      throw std::invalid_argument("list: exponent too large in '" + std::string{item} + "'");
    }
    return std::size_t{1} << k;
  }
  return parse_number<std::size_t>(item, "particle count");
}

}  // namespace

std::vector<std::size_t> parse_n_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (const auto item : split(text, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(parse_count(item));
      continue;
    }
    const auto lo = parse_count(item.substr(0, dots));
    const auto hi = parse_count(item.substr(dots + 2));
    if (lo == 0 || lo > hi) {
      throw std::invalid_argument("list: bad range '" + std::string{item} + "'");
    }
    for (auto n = lo; n <= hi; n *= 2) {
      out.push_back(n);
    }
  }
  return out;
}

std::vector<double> parse_y_list(std::string_view text) {
  std::vector<double> out;
  for (const auto item : split(text, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(parse_number<double>(item, "observation"));
      continue;
    }
    auto rest = item.substr(dots + 2);
    double step = 0.5;
    if (const auto colon = rest.find(':'); colon != std::string_view::npos) {
      step = parse_number<double>(rest.substr(colon + 1), "step");
      rest = rest.substr(0, colon);
    }
    const auto lo = parse_number<double>(item.substr(0, dots), "observation");
    const auto hi = parse_number<double>(rest, "observation");
    if (!(step > 0.0) || lo > hi) {
      throw std::invalid_argument("list: bad range '" + std::string{item} + "'");
    }
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t k = 0; k <= count; ++k) {
      out.push_back(lo + static_cast<double>(k) * step);
    }
  }
  return out;
}

std::string format_real(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ec == std::errc{} ? ptr : buffer);
}

void write_csv(std::ostream& out, std::span<const bench_record> records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << to_string(r.algorithm) << ',' << r.n << ',' << format_real(r.y) << ',' << r.replicate << ',';
    if (r.error) {
      std::string message = *r.error;
      std::replace_if(message.begin(), message.end(), [](char c) { return c == ',' || c == ';' || c == '\n'; }, ' ');
      out << ",,error=" << message << '\n';
      continue;
    }
    out << r.elapsed_ns << ',' << format_real(r.mse) << ',';
    for (std::size_t k = 0; k < r.extras.size(); ++k) {
      out << (k == 0 ? "" : ";") << r.extras[k].first << '=' << r.extras[k].second;
    }
    out << '\n';
  }
}

std::vector<bench_record> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("csv: missing or unexpected header");
  }
  std::vector<bench_record> records;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 7) {
      throw std::invalid_argument("csv: expected 7 fields in '" + line + "'");
    }
    bench_record r;
    const auto kind = parse_resampler_kind(fields[0]);
    if (!kind) {
      throw std::invalid_argument("csv: unknown algorithm '" + std::string{fields[0]} + "'");
    }
    r.algorithm = *kind;
    r.n = parse_number<std::size_t>(fields[1], "N");
    r.y = parse_number<double>(fields[2], "y");
    r.replicate = parse_number<std::size_t>(fields[3], "replicate");
    if (fields[6].starts_with("error=")) {
      r.error = std::string{fields[6].substr(6)};
      records.push_back(std::move(r));
      continue;
    }
    r.elapsed_ns = parse_number<std::int64_t>(fields[4], "elapsed_ns");
    r.mse = parse_number<double>(fields[5], "mse");
    if (!fields[6].empty()) {
      for (const auto item : split(fields[6], ';')) {
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
          throw std::invalid_argument("csv: malformed extra '" + std::string{item} + "'");
        }
        r.extras.emplace_back(std::string{item.substr(0, eq)}, std::string{item.substr(eq + 1)});
      }
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<rmse_row> aggregate_rmse(std::span<const bench_record> records) {
  struct accumulator {
    std::size_t count = 0;
    double mse = 0.0;
    double elapsed = 0.0;
  };
  std::map<std::tuple<resampler_kind, std::size_t, double>, accumulator> groups;
  for (const auto& r : records) {
    if (r.error) {
      continue;
    }
    auto& acc = groups[{r.algorithm, r.n, r.y}];
    ++acc.count;
    acc.mse += r.mse;
    acc.elapsed += static_cast<double>(r.elapsed_ns);
  }
  if (groups.empty()) {
    throw std::invalid_argument("aggregate_rmse: no successful records");
  }
  std::vector<rmse_row> rows;
  rows.reserve(groups.size());
  for (const auto& [key, acc] : groups) {
    const auto count = static_cast<double>(acc.count);
    rows.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), acc.count, std::sqrt(acc.mse / count),
                    acc.elapsed / count});
  }
  return rows;
}

void write_rmse_csv(std::ostream& out, std::span<const rmse_row> rows) {
  out << "algorithm,N,y,replicates,rmse,mean_elapsed_ns\n";
  for (const auto& r : rows) {
    out << to_string(r.algorithm) << ',' << r.n << ',' << format_real(r.y) << ',' << r.replicates << ','
        << format_real(r.rmse) << ',' << format_real(r.mean_elapsed_ns) << '\n';
  }
}

}  // namespace pfresample
