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

#ifndef PFRESAMPLE_TYPES_HPP
#define PFRESAMPLE_TYPES_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

/**
 * \file
 * \brief Index vectors shared by the resampling and ancestry modules.
 */

namespace pfresample {

/// A vector of particle indices or counts, tagged so that ancestry, offspring
/// and cumulative-offspring vectors cannot be mixed up at compile time.
template <class Tag>
class index_vector {
 public:
  using value_type = std::size_t;
  using iterator = typename std::vector<std::size_t>::iterator;
  using const_iterator = typename std::vector<std::size_t>::const_iterator;

  index_vector() = default;
  explicit index_vector(std::size_t size, std::size_t value = 0) : values_(size, value) {}
  explicit index_vector(std::vector<std::size_t> values) : values_(std::move(values)) {}
  index_vector(std::initializer_list<std::size_t> init) : values_(init) {}

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] bool empty() const noexcept { return values_.empty(); }

  std::size_t& operator[](std::size_t i) noexcept { return values_[i]; }
  std::size_t operator[](std::size_t i) const noexcept { return values_[i]; }

  iterator begin() noexcept { return values_.begin(); }
  iterator end() noexcept { return values_.end(); }
  const_iterator begin() const noexcept { return values_.begin(); }
  const_iterator end() const noexcept { return values_.end(); }

  std::size_t* data() noexcept { return values_.data(); }
  const std::size_t* data() const noexcept { return values_.data(); }

  std::span<const std::size_t> view() const noexcept { return values_; }
  const std::vector<std::size_t>& values() const& noexcept { return values_; }
  std::vector<std::size_t> values() && noexcept { return std::move(values_); }

  friend bool operator==(const index_vector&, const index_vector&) = default;

 private:
  std::vector<std::size_t> values_;
};

struct ancestry_tag {};
struct offspring_tag {};
struct cumulative_offspring_tag {};

/// a[i] is the index of the parent of particle i.
using ancestry_vector = index_vector<ancestry_tag>;
/// o[i] is the number of children of particle i; sums to N.
using offspring_vector = index_vector<offspring_tag>;
/// Inclusive running sum of an offspring vector; non-decreasing, last entry N.
using cumulative_offspring = index_vector<cumulative_offspring_tag>;

}  // namespace pfresample

#endif
