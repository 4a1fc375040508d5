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

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "transdir/text.h"

namespace transdir {
namespace {

// Multi-byte punctuation treated like ASCII punctuation at word edges.
constexpr std::array<std::string_view, 10> kUtf8Punctuation = {
    "“", "”", "‘", "’", "«",
    "»", "—", "–", "…", "¿",
};

constexpr std::array<std::string_view, 6> kClitics = {"s",  "re", "ve",
                                                      "ll", "d",  "m"};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_ascii_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && ((u >= 0x21 && u <= 0x2f) || (u >= 0x3a && u <= 0x40) ||
                      (u >= 0x5b && u <= 0x60) || (u >= 0x7b && u <= 0x7e));
}

// Byte length of the punctuation mark starting `word`, or 0.
std::size_t punct_prefix(std::string_view word) {
  if (word.empty()) return 0;
  if (is_ascii_punct(word.front())) return 1;
  for (std::string_view p : kUtf8Punctuation) {
    if (word.starts_with(p)) return p.size();
  }
  return 0;
}

std::size_t punct_suffix(std::string_view word) {
  if (word.empty()) return 0;
  if (is_ascii_punct(word.back())) return 1;
  for (std::string_view p : kUtf8Punctuation) {
    if (word.ends_with(p)) return p.size();
  }
  return 0;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_clitic(std::string_view letters) {
  const std::string l = lower(letters);
  return std::find(kClitics.begin(), kClitics.end(), l) != kClitics.end();
}

bool looks_like_url(std::string_view word) {
  const std::string l = lower(word.substr(0, std::min<std::size_t>(word.size(), 8)));
  return l.starts_with("http://") || l.starts_with("https://") ||
         l.starts_with("ftp://") || l.starts_with("www.");
}

bool url_trailer(char c) {
  return std::string_view(".,;:!?)]}>\"'").find(c) != std::string_view::npos;
}

// Appends `marks` to `out`, merging runs of one repeated mark.
void push_marks(const std::vector<std::string_view>& marks,
                std::vector<std::string>& out) {
  for (std::size_t i = 0; i < marks.size();) {
    std::string token(marks[i]);
    std::size_t j = i + 1;
    while (j < marks.size() && marks[j] == marks[i]) token.append(marks[j++]);
    out.push_back(std::move(token));
    i = j;
  }
}

// Length of the clitic suffix that should be split off `core`, or 0.
std::size_t clitic_suffix(std::string_view core) {
  const std::string l = lower(core);
  if (l.size() > 3 && l.ends_with("n't")) return 3;
  const std::size_t apostrophe = l.rfind('\'');
  if (apostrophe == std::string::npos || apostrophe == 0) return 0;
  if (is_clitic(std::string_view(l).substr(apostrophe + 1))) {
    return l.size() - apostrophe;
  }
  return 0;
}

void tokenize_word(std::string_view word, std::vector<std::string>& out) {
  std::vector<std::string_view> leading;
  std::vector<std::string_view> trailing;

  std::string_view core = word;
  while (std::size_t n = punct_prefix(core)) {
    if (looks_like_url(core)) break;
    leading.push_back(core.substr(0, n));
    core.remove_prefix(n);
  }
  if (looks_like_url(core)) {
    while (!core.empty() && url_trailer(core.back())) {
      trailing.push_back(core.substr(core.size() - 1));
      core.remove_suffix(1);
    }
    std::reverse(trailing.begin(), trailing.end());
    push_marks(leading, out);
    out.emplace_back(core);
    push_marks(trailing, out);
    return;
  }

  // Not a URL: peel the end first, then the front.
  leading.clear();
  core = word;
  while (std::size_t n = punct_suffix(core)) {
    trailing.push_back(core.substr(core.size() - n));
    core.remove_suffix(n);
  }
  std::reverse(trailing.begin(), trailing.end());
  while (std::size_t n = punct_prefix(core)) {
    // Keep the apostrophe of a bare clitic such as "'s".
    if (core.front() == '\'' && is_clitic(core.substr(1))) break;
    leading.push_back(core.substr(0, n));
    core.remove_prefix(n);
  }

  push_marks(leading, out);
  if (!core.empty()) {
    if (std::size_t n = clitic_suffix(core)) {
      // The stem may itself end in punctuation or another clitic.
      tokenize_word(core.substr(0, core.size() - n), out);
      out.emplace_back(core.substr(core.size() - n));
    } else {
      out.emplace_back(core);
    }
  }
  push_marks(trailing, out);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) tokenize_word(text.substr(i, j - i), tokens);
    i = j;
  }
  return tokens;
}

}  // namespace transdir
