// Copyright 2026 The randspec developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

#include "randspec/matrix.hpp"

namespace randspec {

/// SplitMix64: the 64-bit state walks the golden-gamma sequence
/// (increment 0x9e3779b97f4a7c15) and each output is finalized by the
/// xor-shift-multiply chain with constants 0xbf58476d1ce4e5b9 and
/// 0x94d049bb133111eb. The stream depends only on the seed, so identical
/// seeds reproduce identical scenarios on any platform.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();

    /// Uniform in [0, 1), 53 mantissa bits.
    double next_double();

    double next_uniform(double lo, double hi);

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n);

    /// Standard normal via Box-Muller; draws are paired internally.
    double next_gaussian();

    /// (g1 + i g2) / sqrt(2), unit-variance complex gaussian.
    Complex next_gaussian_complex();

  private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace randspec
