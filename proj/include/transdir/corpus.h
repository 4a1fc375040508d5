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

// Derivation of direction-annotated bilingual corpora from a parallel-corpus
// tree laid out as
//
//   root/{foreign}/<rel>.xml     foreign-language documents
//   root/en/<rel>.xml            English counterparts at the same <rel>
//   root/{foreign}_en/<rel>.lnk  sentence links, again at the same <rel>
//
// Traversal starts from the foreign side because link files map foreign
// sentence ids onto English ones. Documents are filtered first, then the
// surviving documents' sentences; every rejected unit gets exactly one code,
// the first filter it fails.

#ifndef TRANSDIR_CORPUS_H_
#define TRANSDIR_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "transdir/language.h"

namespace transdir {

struct Sentence {
  std::string id;
  // Language tag of the sentence; documents fill in their own language when
  // the tag is absent.
  std::string language;
  // Whitespace-normalized: single spaces, no leading or trailing blanks.
  std::string text;
};

struct DocumentRecord {
  std::string relative_path;
  std::string language;
  std::optional<std::string> declared_source_language;
  std::vector<Sentence> sentences;
};

struct Link {
  std::vector<std::string> source_ids;
  std::vector<std::string> target_ids;

  bool one_to_one() const {
    return source_ids.size() == 1 && target_ids.size() == 1;
  }
};

struct LinkRecord {
  std::string source_doc;
  std::string target_doc;
  std::vector<Link> links;
};

// Parser seam for the on-disk schema. The shipped XmlCorpusFormat reads
//
//   <doc lang="fr" source_language="fr"><s id="1" lang="fr">...</s></doc>
//   <linkGrp src=".." trg=".."><link src="1" trg="1"/></linkGrp>
//
// Parse failures throw DataError.
class CorpusFormat {
 public:
  virtual ~CorpusFormat() = default;

  virtual std::string_view document_extension() const = 0;
  virtual std::string_view link_extension() const = 0;

  virtual DocumentRecord parse_document(
      const std::filesystem::path& file, std::string_view relative_path,
      std::string_view directory_language) const = 0;
  virtual LinkRecord parse_links(const std::filesystem::path& file) const = 0;
};

class XmlCorpusFormat : public CorpusFormat {
 public:
  std::string_view document_extension() const override { return ".xml"; }
  std::string_view link_extension() const override { return ".lnk"; }

  DocumentRecord parse_document(
      const std::filesystem::path& file, std::string_view relative_path,
      std::string_view directory_language) const override;
  LinkRecord parse_links(const std::filesystem::path& file) const override;
};

const CorpusFormat& default_corpus_format();

// Collapses runs of ASCII whitespace into single spaces and trims both ends.
std::string normalize_space(std::string_view text);

// One foreign document and whatever mirrors it at the same relative path.
struct ScanEntry {
  // '/'-separated path below the language directory, with extension.
  std::string relative_path;
  bool has_english = false;
  bool has_link = false;
  std::optional<DocumentRecord> foreign;
  std::optional<DocumentRecord> english;
  std::optional<LinkRecord> link;
  // Set when any of the present files failed to parse; `path` is the
  // "{lang}/{relative path}" of the first failing file.
  struct ParseFailure {
    std::string path;
    std::string message;
  };
  std::optional<ParseFailure> parse_error;
};

using ScanIndex = std::vector<ScanEntry>;

// Indexes every foreign document below root/{foreign}, sorted by relative
// path. Throws ConfigError when root is not a directory; a missing foreign
// directory yields an empty index.
ScanIndex scan_pair(const std::filesystem::path& root, const LanguagePair& pair,
                    const CorpusFormat& format = default_corpus_format());

enum class RejectCode {
  kNoCounterpart,
  kParseError,
  kNoSourceLang,
  kSourceLangMismatch,
  kContradictorySourceLang,
  kSentLangTagMismatch,
  kSentNoLink,
  kNonOneToOneLink,
};

inline constexpr RejectCode kAllRejectCodes[] = {
    RejectCode::kNoCounterpart,       RejectCode::kParseError,
    RejectCode::kNoSourceLang,        RejectCode::kSourceLangMismatch,
    RejectCode::kContradictorySourceLang, RejectCode::kSentLangTagMismatch,
    RejectCode::kSentNoLink,          RejectCode::kNonOneToOneLink,
};

// "NO_COUNTERPART", "SENT_NO_LINK", ...
std::string_view reject_code_name(RejectCode code);
RejectCode parse_reject_code(std::string_view name);
bool is_document_level(RejectCode code);

struct RejectReason {
  RejectCode code;
  // "{lang}/{relative path}" of the file the reject is attributed to.
  std::string path;
  std::optional<std::string> sentence_id;

  friend bool operator==(const RejectReason&, const RejectReason&) = default;
};

struct DocumentPair {
  std::string relative_path;
  DocumentRecord foreign;
  DocumentRecord english;
  LinkRecord link;
  // Either pair.foreign() or "en".
  std::string source_language;
};

struct DocumentFilterResult {
  std::vector<DocumentPair> valid;
  std::vector<RejectReason> rejects;
};

// Document filters, in order: NO_COUNTERPART, PARSE_ERROR, NO_SOURCE_LANG,
// SOURCE_LANG_MISMATCH, CONTRADICTORY_SOURCE_LANG. When only one side
// declares a source language that declaration is used.
DocumentFilterResult filter_documents(const ScanIndex& index,
                                      const LanguagePair& pair);

struct AlignedSentence {
  std::string english_text;
  std::string foreign_text;
  std::string original_language;
  std::string source_doc;

  friend bool operator==(const AlignedSentence&,
                         const AlignedSentence&) = default;
};

struct SentenceResolution {
  std::vector<AlignedSentence> sentences;
  std::vector<RejectReason> rejects;
};

// Aligns the foreign sentences of a valid document pair to their English
// counterparts through 1:1 links, labelling each with the document's source
// language. Every foreign sentence is either emitted or rejected once; links
// naming ids absent from either document add a SENT_NO_LINK reject for the
// missing id.
SentenceResolution resolve_directions(const DocumentPair& documents,
                                      const LinkRecord& links,
                                      const LanguagePair& pair);

struct ParallelFiles {
  std::filesystem::path english;
  std::filesystem::path foreign;
  std::filesystem::path origin;
};

ParallelFiles parallel_file_paths(const std::filesystem::path& dir,
                                  const LanguagePair& pair);

// Writes `{pair}.src.en.txt`, `{pair}.trg.{foreign}.txt` and
// `{pair}.origin.txt`, one LF-terminated line per sentence.
ParallelFiles emit_parallel_files(std::span<const AlignedSentence> sentences,
                                  const std::filesystem::path& out_dir,
                                  const LanguagePair& pair);

// Reads the three files back. `source_doc` is not stored and stays empty.
std::vector<AlignedSentence> read_parallel_files(
    const std::filesystem::path& dir, const LanguagePair& pair);

struct DerivationStats {
  std::int64_t initial_docs = 0;
  std::int64_t valid_docs_foreign_original = 0;
  std::int64_t valid_docs_english_original = 0;
  std::int64_t valid_sentences_total = 0;
  std::int64_t valid_sentences_foreign_original = 0;
  std::int64_t valid_sentences_english_original = 0;
  std::map<RejectCode, std::int64_t> rejects_by_reason;

  friend bool operator==(const DerivationStats&,
                         const DerivationStats&) = default;
};

DerivationStats derivation_stats(std::int64_t initial_docs,
                                 std::span<const DocumentPair> valid_docs,
                                 std::span<const AlignedSentence> sentences,
                                 std::span<const RejectReason> rejects,
                                 const LanguagePair& pair);

// Pretty-printed JSON with the raw counts plus fractions of the initial
// document count and of the valid sentence total.
std::string stats_to_json(const DerivationStats& stats, const LanguagePair& pair);
DerivationStats stats_from_json(std::string_view text);

// path TAB sentence-id (possibly empty) TAB code, one reject per line.
std::string rejects_to_tsv(std::span<const RejectReason> rejects);

struct Derivation {
  std::vector<AlignedSentence> sentences;
  std::vector<RejectReason> rejects;
  DerivationStats stats;
};

// scan_pair -> filter_documents -> resolve_directions over every valid pair,
// in relative-path order.
Derivation derive_pair(const std::filesystem::path& root,
                       const LanguagePair& pair,
                       const CorpusFormat& format = default_corpus_format());

struct DerivationOutputs {
  ParallelFiles parallel;
  std::filesystem::path stats;
  std::filesystem::path rejects;
};

// emit_parallel_files plus `{pair}.stats.json` and `{pair}.rejects.tsv`.
DerivationOutputs write_derivation(const Derivation& derivation,
                                   const std::filesystem::path& out_dir,
                                   const LanguagePair& pair);

}  // namespace transdir

#endif  // TRANSDIR_CORPUS_H_
