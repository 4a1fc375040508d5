// Copyright 2026 The Transdir Authors.
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

// Seed derivation for the independent random streams used across the
// pipeline. Every stream is a std::mt19937_64 seeded from (seed, key), so the
// output of a run depends only on its top-level seed.

#ifndef TRANSDIR_RANDOM_H_
#define TRANSDIR_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace transdir {

using Rng = std::mt19937_64;

// 64-bit FNV-1a. Stable across platforms; also used for content hashes.
std::uint64_t fnv1a(std::string_view bytes,
                    std::uint64_t basis = 0xcbf29ce484222325ULL);

std::uint64_t derive_seed(std::uint64_t seed, std::string_view key);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

inline Rng make_rng(std::uint64_t seed, std::string_view key) {
  return Rng(derive_seed(seed, key));
}

}  // namespace transdir

#endif  // TRANSDIR_RANDOM_H_
