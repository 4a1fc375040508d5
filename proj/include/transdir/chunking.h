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

// Assembly of tagged sentences into fixed-size, label-pure chunks, and class
// balancing of chunk datasets.

#ifndef TRANSDIR_CHUNKING_H_
#define TRANSDIR_CHUNKING_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "transdir/language.h"
#include "transdir/text.h"

namespace transdir {

inline constexpr std::string_view kPooled = "pooled";

enum class ChunkMode {
  // Partitioned by (pair, label); sentences keep their input order.
  kHomogeneous,
  // Partitioned by label only; each partition is shuffled first.
  kPooled,
};

struct ChunkingConfig {
  std::int64_t size_tokens = 2000;
  ChunkMode mode = ChunkMode::kHomogeneous;
  std::uint64_t seed = 0;
  bool drop_partial_final = true;
  // Pooled mode only: drop repeated token sequences before shuffling.
  bool dedup = false;
};

struct Chunk {
  std::vector<TaggedSentence> sentences;
  DirectionLabel label = DirectionLabel::kOriginal;
  // Sum of sentence token counts.
  std::int64_t token_count = 0;
  // "fr-en" or "pooled".
  std::string provenance;
};

// Greedy fill: whole sentences are appended until the chunk reaches
// `size_tokens`, then it is emitted. Output is ordered by partition
// (pair, then ORIGINAL before TRANSLATED) and by position within it. A short
// final chunk is kept only when `drop_partial_final` is false. ConfigError
// when size_tokens < 1; DataError for sentences whose origin does not match
// their pair.
std::vector<Chunk> build_chunks(std::span<const TaggedSentence> sentences,
                                const ChunkingConfig& config);

// Concatenates the corpora and applies a seeded uniform permutation. With
// `dedup`, later copies of an identical token sequence are dropped first.
std::vector<TaggedSentence> shuffle_pool(
    std::span<const std::vector<TaggedSentence>> corpora, DirectionLabel label,
    std::uint64_t seed, bool dedup = false);

// Keeps every chunk of the minority class and an equally sized random subset
// of the majority class, then shuffles. ConfigError if a class is empty.
std::vector<Chunk> balance(std::vector<Chunk> chunks, std::uint64_t seed);

struct ClassCounts {
  std::size_t original = 0;
  std::size_t translated = 0;
};
ClassCounts count_classes(std::span<const Chunk> chunks);

// JSON lines: {"label":"O|T","pair":"fr-en|pooled","n":2003,
//              "sentences":[{"tokens":[...],"tags":[...]}, ...]}
std::string format_chunks(std::span<const Chunk> chunks);
std::vector<Chunk> parse_chunks(std::string_view content,
                                std::string_view source_name = "");
void write_chunks(const std::filesystem::path& path, std::span<const Chunk> chunks);
std::vector<Chunk> load_chunks(const std::filesystem::path& path);

}  // namespace transdir

#endif  // TRANSDIR_CHUNKING_H_
