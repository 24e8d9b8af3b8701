// Copyright 2026 The LexiMark Authors
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

// Portable seeded randomness. std::mt19937_64's output sequence is fixed by
// the standard, but the std distributions are not, so bounded draws and
// shuffles are implemented here to keep outputs identical across toolchains.

#ifndef LEXIMARK_RANDOM_H_
#define LEXIMARK_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace leximark {

using Rng = std::mt19937_64;

std::uint64_t SplitMix64(std::uint64_t x);

// Derives an independent stream seed from a base seed and a key path.
std::uint64_t DeriveSeed(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> keys);

// Unbiased draw from [0, n); n must be positive.
std::size_t UniformIndex(Rng& rng, std::size_t n);

// Uniform double in [0, 1) with 53 random bits.
double UniformUnit(Rng& rng);

// `count` distinct indices from [0, n), in draw order (partial
// Fisher-Yates).
std::vector<std::size_t> SampleIndices(Rng& rng, std::size_t n,
                                       std::size_t count);

template <typename T>
void Shuffle(Rng& rng, std::vector<T>& items) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[UniformIndex(rng, i)]);
  }
}

}  // namespace leximark

#endif  // LEXIMARK_RANDOM_H_
