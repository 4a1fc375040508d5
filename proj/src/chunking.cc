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

#include "transdir/chunking.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "file_util.h"
#include "json.hpp"
#include "transdir/errors.h"
#include "transdir/random.h"

namespace transdir {
namespace {

void fill_greedily(std::vector<TaggedSentence> sentences, DirectionLabel label,
                   const std::string& provenance, const ChunkingConfig& config,
                   std::vector<Chunk>& out) {
  Chunk current;
  current.label = label;
  current.provenance = provenance;
  for (TaggedSentence& s : sentences) {
    current.token_count += static_cast<std::int64_t>(s.size());
    current.sentences.push_back(std::move(s));
    if (current.token_count >= config.size_tokens) {
      out.push_back(std::move(current));
      current = Chunk{};
      current.label = label;
      current.provenance = provenance;
    }
  }
  if (!current.sentences.empty() && !config.drop_partial_final) {
    out.push_back(std::move(current));
  }
}

std::string joined_tokens(const TaggedSentence& s) {
  std::string key;
  for (const std::string& t : s.tokens) {
    key.append(t);
    key.push_back(' ');
  }
  return key;
}

}  // namespace

std::vector<TaggedSentence> shuffle_pool(
    std::span<const std::vector<TaggedSentence>> corpora, DirectionLabel label,
    std::uint64_t seed, bool dedup) {
  std::vector<TaggedSentence> pool;
  std::set<std::string> seen;
  for (const std::vector<TaggedSentence>& corpus : corpora) {
    for (const TaggedSentence& s : corpus) {
      if (sentence_label(s) != label) {
        throw DataError("shuffle_pool: sentence of pair " + s.pair +
                        " does not carry label " + std::string(label_code(label)));
      }
      if (dedup && !seen.insert(joined_tokens(s)).second) continue;
      pool.push_back(s);
    }
  }
  Rng rng = make_rng(seed, std::string("pool/") + std::string(label_code(label)));
  std::shuffle(pool.begin(), pool.end(), rng);
  return pool;
}

std::vector<Chunk> build_chunks(std::span<const TaggedSentence> sentences,
                                const ChunkingConfig& config) {
  if (config.size_tokens < 1) throw ConfigError("chunk size must be >= 1 token");

  std::vector<Chunk> out;
  if (config.mode == ChunkMode::kHomogeneous) {
    std::map<std::pair<std::string, int>, std::vector<TaggedSentence>> partitions;
    for (const TaggedSentence& s : sentences) {
      const DirectionLabel label = sentence_label(s);
      partitions[{s.pair, label_value(label)}].push_back(s);
    }
    for (auto& [key, members] : partitions) {
      fill_greedily(std::move(members), static_cast<DirectionLabel>(key.second),
                    key.first, config, out);
    }
    return out;
  }

  std::vector<TaggedSentence> by_label[2];
  for (const TaggedSentence& s : sentences) {
    by_label[label_value(sentence_label(s))].push_back(s);
  }
  for (DirectionLabel label : {DirectionLabel::kOriginal, DirectionLabel::kTranslated}) {
    std::vector<TaggedSentence> pooled = shuffle_pool(
        std::span(&by_label[label_value(label)], 1), label, config.seed, config.dedup);
    fill_greedily(std::move(pooled), label, std::string(kPooled), config, out);
  }
  return out;
}

ClassCounts count_classes(std::span<const Chunk> chunks) {
  ClassCounts counts;
  for (const Chunk& c : chunks) {
    if (c.label == DirectionLabel::kOriginal) {
      ++counts.original;
    } else {
      ++counts.translated;
    }
  }
  return counts;
}

std::vector<Chunk> balance(std::vector<Chunk> chunks, std::uint64_t seed) {
  std::vector<std::size_t> by_label[2];
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    by_label[label_value(chunks[i].label)].push_back(i);
  }
  if (by_label[0].empty() || by_label[1].empty()) {
    throw ConfigError("cannot balance: one class has no chunks (" +
                      std::to_string(by_label[0].size()) + " original, " +
                      std::to_string(by_label[1].size()) + " translated)");
  }
  const std::size_t keep = std::min(by_label[0].size(), by_label[1].size());
  Rng subset_rng = make_rng(seed, "balance/subset");
  std::vector<std::size_t> selected;
  for (auto& members : by_label) {
    if (members.size() > keep) {
      std::shuffle(members.begin(), members.end(), subset_rng);
      members.resize(keep);
      std::sort(members.begin(), members.end());
    }
    selected.insert(selected.end(), members.begin(), members.end());
  }
  std::sort(selected.begin(), selected.end());
  Rng order_rng = make_rng(seed, "balance/order");
  std::shuffle(selected.begin(), selected.end(), order_rng);

  std::vector<Chunk> out;
  out.reserve(selected.size());
  for (std::size_t i : selected) out.push_back(std::move(chunks[i]));
  return out;
}

std::string format_chunks(std::span<const Chunk> chunks) {
  std::string out;
  for (const Chunk& c : chunks) {
    nlohmann::ordered_json j;
    j["label"] = label_code(c.label);
    j["pair"] = c.provenance;
    j["n"] = c.token_count;
    nlohmann::ordered_json sentences = nlohmann::ordered_json::array();
    for (const TaggedSentence& s : c.sentences) {
      nlohmann::ordered_json sj;
      sj["tokens"] = s.tokens;
      sj["tags"] = s.tags;
      sentences.push_back(std::move(sj));
    }
    j["sentences"] = std::move(sentences);
    out.append(j.dump());
    out.push_back('\n');
  }
  return out;
}

std::vector<Chunk> parse_chunks(std::string_view content,
                                std::string_view source_name) {
  std::vector<Chunk> out;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    auto fail = [&](const std::string& what) {
      return DataError(std::string(source_name) + ":" +
                       std::to_string(line_number) + ": " + what);
    };
    Chunk chunk;
    std::string pair, translated_origin;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      chunk.label = parse_label_code(j.at("label").get<std::string>());
      chunk.provenance = j.at("pair").get<std::string>();
      chunk.token_count = j.at("n").get<std::int64_t>();
      if (chunk.provenance != kPooled) {
        const LanguagePair lp = LanguagePair::parse(chunk.provenance);
        pair = lp.code();
        translated_origin = lp.foreign();
      }
      for (const nlohmann::json& sj : j.at("sentences")) {
        TaggedSentence s;
        s.tokens = sj.at("tokens").get<std::vector<std::string>>();
        s.tags = sj.at("tags").get<std::vector<std::string>>();
        chunk.sentences.push_back(std::move(s));
      }
    } catch (const nlohmann::json::exception& e) {
      throw fail(std::string("malformed chunk: ") + e.what());
    } catch (const Error& e) {
      throw fail(e.what());
    }
    for (TaggedSentence& s : chunk.sentences) {
      if (s.tokens.empty() || s.tokens.size() != s.tags.size()) {
        throw fail("sentence tokens/tags length mismatch");
      }
      s.pair = pair;
      s.origin = chunk.label == DirectionLabel::kOriginal ? std::string(kEnglish)
                                                          : translated_origin;
    }
    std::int64_t n = 0;
    for (const TaggedSentence& s : chunk.sentences) n += static_cast<std::int64_t>(s.size());
    if (n != chunk.token_count) throw fail("token count does not match sentences");
    out.push_back(std::move(chunk));
  }
  return out;
}

void write_chunks(const std::filesystem::path& path, std::span<const Chunk> chunks) {
  internal::write_file(path, format_chunks(chunks));
}

std::vector<Chunk> load_chunks(const std::filesystem::path& path) {
  return parse_chunks(internal::read_file(path), path.string());
}

}  // namespace transdir
