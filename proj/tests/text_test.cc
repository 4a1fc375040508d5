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

#include "transdir/text.h"

#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "transdir/errors.h"

namespace transdir {
namespace {

using Tokens = std::vector<std::string>;

std::string Join(const Tokens& tokens) {
  std::string out;
  for (const std::string& t : tokens) out += (out.empty() ? "" : " ") + t;
  return out;
}

TEST(TokenizeTest, SplitsFinalPunctuation) {
  EXPECT_EQ(tokenize("We agree."), (Tokens{"We", "agree", "."}));
}

TEST(TokenizeTest, EmptyAndBlankInput) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize(" \t\n ").empty());
}

TEST(TokenizeTest, SplitsContractions) {
  EXPECT_EQ(tokenize("don't stop"), (Tokens{"do", "n't", "stop"}));
  EXPECT_EQ(tokenize("We're sure it's fine"),
            (Tokens{"We", "'re", "sure", "it", "'s", "fine"}));
  EXPECT_EQ(tokenize("they'll"), (Tokens{"they", "'ll"}));
  EXPECT_EQ(tokenize("I'd I'm you've"), (Tokens{"I", "'d", "I", "'m", "you", "'ve"}));
}

TEST(TokenizeTest, ContractionBeforePunctuation) {
  EXPECT_EQ(tokenize("(can't)."), (Tokens{"(", "ca", "n't", ")", "."}));
}

TEST(TokenizeTest, KeepsInternalPunctuation) {
  EXPECT_EQ(tokenize("1,000.5 tons"), (Tokens{"1,000.5", "tons"}));
  EXPECT_EQ(tokenize("Member-States agreed"), (Tokens{"Member-States", "agreed"}));
  EXPECT_EQ(tokenize("A/RES/55/2"), (Tokens{"A/RES/55/2"}));
}

TEST(TokenizeTest, SeparatesBracketsAndQuotes) {
  EXPECT_EQ(tokenize("(see \"annex\"),"),
            (Tokens{"(", "see", "\"", "annex", "\"", ")", ","}));
}

TEST(TokenizeTest, RepeatedMarksStayTogether) {
  EXPECT_EQ(tokenize("Wait... what?!"), (Tokens{"Wait", "...", "what", "?", "!"}));
  EXPECT_EQ(tokenize("--"), (Tokens{"--"}));
}

TEST(TokenizeTest, UrlsStayWhole) {
  EXPECT_EQ(tokenize("See http://www.un.org/en/index.html."),
            (Tokens{"See", "http://www.un.org/en/index.html", "."}));
  EXPECT_EQ(tokenize("(www.un.org)"), (Tokens{"(", "www.un.org", ")"}));
}

TEST(TokenizeTest, NonAsciiPunctuation) {
  EXPECT_EQ(tokenize("\xE2\x80\x9CYes\xE2\x80\x9D"),
            (Tokens{"\xE2\x80\x9C", "Yes", "\xE2\x80\x9D"}));
}

TEST(TokenizeTest, LeadingApostropheClitic) {
  EXPECT_EQ(tokenize("'s"), (Tokens{"'s"}));
  EXPECT_EQ(tokenize("'quoted'"), (Tokens{"'", "quoted", "'"}));
}

TEST(TokenizeTest, IdempotentOnRandomText) {
  const std::string alphabet = "abcXY'.,;:!?()\"-/ 0123 n't 's ";
  std::mt19937 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    const int n = static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) text.push_back(alphabet[rng() % alphabet.size()]);
    const Tokens once = tokenize(text);
    EXPECT_EQ(tokenize(Join(once)), once) << "input: [" << text << "]";
    for (const std::string& t : once) EXPECT_FALSE(t.empty());
  }
}

TaggedSentence Sentence(Tokens tokens, Tokens tags, std::string origin = "fr",
                        std::string pair = "fr-en") {
  return {std::move(tokens), std::move(tags), std::move(origin), std::move(pair)};
}

TEST(TaggedSentenceTest, LabelFollowsOrigin) {
  EXPECT_EQ(sentence_label(Sentence({"a"}, {"DT"}, "en")), DirectionLabel::kOriginal);
  EXPECT_EQ(sentence_label(Sentence({"a"}, {"DT"}, "fr")), DirectionLabel::kTranslated);
  EXPECT_THROW(sentence_label(Sentence({"a"}, {"DT"}, "ru")), DataError);
}

TEST(TaggedSentenceTest, Validation) {
  EXPECT_EQ(validate_sentence(Sentence({"a", "b"}, {"DT", "NN"})), "");
  EXPECT_NE(validate_sentence(Sentence({}, {})), "");
  EXPECT_NE(validate_sentence(Sentence({"a"}, {"DT", "NN"})), "");
  EXPECT_NE(validate_sentence(Sentence({"a b"}, {"DT"})), "");
  EXPECT_NE(validate_sentence(Sentence({"a"}, {"D T"})), "");
  EXPECT_NE(validate_sentence(Sentence({"a"}, {"DT"}, "es")), "");
}

TEST(PretaggedTest, ParsesOneLine) {
  const auto sentences = parse_pretagged(
      R"({"tokens":["a","b"],"tags":["DT","NN"],"origin":"fr","pair":"fr-en"})" "\n");
  ASSERT_EQ(sentences.size(), 1u);
  EXPECT_EQ(sentences[0], Sentence({"a", "b"}, {"DT", "NN"}));
}

TEST(PretaggedTest, EmptyContent) { EXPECT_TRUE(parse_pretagged("").empty()); }

TEST(PretaggedTest, LengthMismatchNamesLine) {
  try {
    parse_pretagged(R"({"tokens":["a","b"],"tags":["DT"],"origin":"fr","pair":"fr-en"})",
                    "in.jsonl");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("in.jsonl:1"), std::string::npos) << e.what();
  }
}

TEST(PretaggedTest, MalformedJsonIsDataError) {
  EXPECT_THROW(parse_pretagged("{\"tokens\":"), DataError);
  EXPECT_THROW(parse_pretagged(R"({"tokens":["a"]})"), DataError);
}

TEST(PretaggedTest, RoundTripThroughFile) {
  const std::vector<TaggedSentence> sentences = {
      Sentence({"The", "\"vote\"", "."}, {"DT", "NN", "."}, "en", "ar-en"),
      Sentence({"Ça", "va"}, {"PRP", "VBZ"}, "ar", "ar-en")};
  const std::string text = format_pretagged(sentences);
  EXPECT_EQ(parse_pretagged(text), sentences);

  testing::TempDir dir;
  write_pretagged(dir / "x.jsonl", sentences);
  EXPECT_EQ(load_pretagged(dir / "x.jsonl"), sentences);
  EXPECT_THROW(load_pretagged(dir / "missing.jsonl"), IoError);
}

}  // namespace
}  // namespace transdir
