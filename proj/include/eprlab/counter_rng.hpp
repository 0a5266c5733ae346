// Copyright 2026 The eprlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>

namespace eprlab::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11). Stateless bijection of
/// the counter for a fixed key.
Counter philox4x32_10(Counter ctr, Key key);

/// Random values addressed by (seed, index): draw i depends only on the seed
/// and i, never on how many draws were taken before it.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Two 64-bit words for draw `index`.
  std::array<std::uint64_t, 2> bits(std::uint64_t index) const;

  /// Two uniforms in the open interval (0, 1).
  std::array<double, 2> uniforms(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
};

/// Top 52 bits mapped to the open interval (0, 1).
double to_open_unit(std::uint64_t bits);

/// Inverse standard-normal CDF.
double normal_quantile(double u);

}  // namespace eprlab::rng
