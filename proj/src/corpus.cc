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

#include "transdir/corpus.h"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <utility>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "file_util.h"
#include "json.hpp"
#include "transdir/errors.h"

namespace transdir {
namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

pt::ptree read_xml_tree(const fs::path& file) {
  // Read through our own helper so a missing file is an IoError and not an
  // XML error.
  std::string content = internal::read_file(file);
  std::istringstream in(content);
  pt::ptree tree;
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw DataError(file.string() + ": malformed XML: " + e.message());
  }
  return tree;
}

std::string attribute(const pt::ptree& node, const char* name,
                      const std::string& fallback = "") {
  return node.get<std::string>(std::string("<xmlattr>.") + name, fallback);
}

void collect_sentences(const pt::ptree& node, const std::string& doc_language,
                       const fs::path& file, std::vector<Sentence>& out) {
  for (const auto& [name, child] : node) {
    if (name == "<xmlattr>" || name == "<xmlcomment>") continue;
    if (name == "s") {
      Sentence sentence;
      sentence.id = attribute(child, "id");
      if (sentence.id.empty()) {
        throw DataError(file.string() + ": sentence without id");
      }
      sentence.language = attribute(child, "lang", doc_language);
      sentence.text = normalize_space(child.data());
      out.push_back(std::move(sentence));
    } else {
      collect_sentences(child, doc_language, file, out);
    }
  }
}

std::vector<std::string> split_ids(const std::string& ids) {
  std::vector<std::string> out;
  std::string current;
  for (char c : ids) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::string side_path(std::string_view dir, std::string_view relative_path) {
  std::string out(dir);
  out.push_back('/');
  out.append(relative_path);
  return out;
}

}  // namespace

std::string normalize_space(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

DocumentRecord XmlCorpusFormat::parse_document(
    const fs::path& file, std::string_view relative_path,
    std::string_view directory_language) const {
  pt::ptree tree = read_xml_tree(file);
  auto root = tree.get_child_optional("doc");
  if (!root) throw DataError(file.string() + ": missing <doc> root element");

  DocumentRecord doc;
  doc.relative_path = std::string(relative_path);
  doc.language = attribute(*root, "lang", std::string(directory_language));
  std::string source = attribute(*root, "source_language");
  if (!source.empty()) doc.declared_source_language = source;
  collect_sentences(*root, doc.language, file, doc.sentences);

  std::set<std::string_view> ids;
  for (const Sentence& s : doc.sentences) {
    if (!ids.insert(s.id).second) {
      throw DataError(file.string() + ": duplicate sentence id '" + s.id + "'");
    }
  }
  return doc;
}

LinkRecord XmlCorpusFormat::parse_links(const fs::path& file) const {
  pt::ptree tree = read_xml_tree(file);
  auto root = tree.get_child_optional("linkGrp");
  if (!root) throw DataError(file.string() + ": missing <linkGrp> root element");

  LinkRecord record;
  record.source_doc = attribute(*root, "src");
  record.target_doc = attribute(*root, "trg");
  for (const auto& [name, child] : *root) {
    if (name != "link") continue;
    Link link;
    link.source_ids = split_ids(attribute(child, "src"));
    link.target_ids = split_ids(attribute(child, "trg"));
    record.links.push_back(std::move(link));
  }
  return record;
}

const CorpusFormat& default_corpus_format() {
  static const XmlCorpusFormat format;
  return format;
}

ScanIndex scan_pair(const fs::path& root, const LanguagePair& pair,
                    const CorpusFormat& format) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw ConfigError("corpus root " + root.string() + " is not a directory");
  }
  const fs::path foreign_dir = root / pair.foreign();
  const fs::path english_dir = root / std::string(kEnglish);
  const fs::path link_dir = root / pair.link_dir();

  std::vector<std::string> relative_paths;
  if (fs::is_directory(foreign_dir, ec)) {
    fs::recursive_directory_iterator it(foreign_dir, ec);
    if (ec) throw ConfigError("cannot read " + foreign_dir.string());
    for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
      if (ec) throw ConfigError("cannot traverse " + foreign_dir.string());
      if (!it->is_regular_file()) continue;
      if (it->path().extension() != format.document_extension()) continue;
      relative_paths.push_back(
          fs::relative(it->path(), foreign_dir).generic_string());
    }
  }
  std::sort(relative_paths.begin(), relative_paths.end());

  ScanIndex index;
  index.reserve(relative_paths.size());
  for (const std::string& rel : relative_paths) {
    ScanEntry entry;
    entry.relative_path = rel;
    const fs::path english_file = english_dir / rel;
    fs::path link_file = link_dir / rel;
    link_file.replace_extension(format.link_extension());
    entry.has_english = fs::is_regular_file(english_file, ec);
    entry.has_link = fs::is_regular_file(link_file, ec);

    auto note_failure = [&](std::string_view dir, std::string_view path,
                            const DataError& e) {
      if (!entry.parse_error) {
        entry.parse_error =
            ScanEntry::ParseFailure{side_path(dir, path), e.what()};
      }
    };
    try {
      entry.foreign =
          format.parse_document(foreign_dir / rel, rel, pair.foreign());
    } catch (const DataError& e) {
      note_failure(pair.foreign(), rel, e);
    }
    if (entry.has_english) {
      try {
        entry.english = format.parse_document(english_file, rel, kEnglish);
      } catch (const DataError& e) {
        note_failure(kEnglish, rel, e);
      }
    }
    if (entry.has_link) {
      try {
        entry.link = format.parse_links(link_file);
      } catch (const DataError& e) {
        note_failure(pair.link_dir(),
                     fs::path(rel).replace_extension(format.link_extension())
                         .generic_string(),
                     e);
      }
    }
    index.push_back(std::move(entry));
  }
  return index;
}

std::string_view reject_code_name(RejectCode code) {
  switch (code) {
    case RejectCode::kNoCounterpart:
      return "NO_COUNTERPART";
    case RejectCode::kParseError:
      return "PARSE_ERROR";
    case RejectCode::kNoSourceLang:
      return "NO_SOURCE_LANG";
    case RejectCode::kSourceLangMismatch:
      return "SOURCE_LANG_MISMATCH";
    case RejectCode::kContradictorySourceLang:
      return "CONTRADICTORY_SOURCE_LANG";
    case RejectCode::kSentLangTagMismatch:
      return "SENT_LANG_TAG_MISMATCH";
    case RejectCode::kSentNoLink:
      return "SENT_NO_LINK";
    case RejectCode::kNonOneToOneLink:
      return "NON_ONE_TO_ONE_LINK";
  }
  return "UNKNOWN";
}

RejectCode parse_reject_code(std::string_view name) {
  for (RejectCode code : kAllRejectCodes) {
    if (reject_code_name(code) == name) return code;
  }
  throw DataError("unknown reject code '" + std::string(name) + "'");
}

bool is_document_level(RejectCode code) {
  return code < RejectCode::kSentLangTagMismatch;
}

DocumentFilterResult filter_documents(const ScanIndex& index,
                                      const LanguagePair& pair) {
  DocumentFilterResult result;
  for (const ScanEntry& entry : index) {
    const std::string foreign_path = side_path(pair.foreign(), entry.relative_path);
    auto reject = [&](RejectCode code, std::string path) {
      result.rejects.push_back({code, std::move(path), std::nullopt});
    };
    if (!entry.has_english || !entry.has_link) {
      reject(RejectCode::kNoCounterpart, foreign_path);
      continue;
    }
    if (entry.parse_error) {
      reject(RejectCode::kParseError, entry.parse_error->path);
      continue;
    }
    const auto& foreign_src = entry.foreign->declared_source_language;
    const auto& english_src = entry.english->declared_source_language;
    if (!foreign_src && !english_src) {
      reject(RejectCode::kNoSourceLang, foreign_path);
      continue;
    }
    auto belongs = [&](const std::optional<std::string>& lang) {
      return !lang || *lang == pair.foreign() || *lang == kEnglish;
    };
    if (!belongs(foreign_src) || !belongs(english_src)) {
      reject(RejectCode::kSourceLangMismatch, foreign_path);
      continue;
    }
    if (foreign_src && english_src && *foreign_src != *english_src) {
      reject(RejectCode::kContradictorySourceLang, foreign_path);
      continue;
    }
    DocumentPair valid;
    valid.relative_path = entry.relative_path;
    valid.foreign = *entry.foreign;
    valid.english = *entry.english;
    valid.link = *entry.link;
    valid.source_language = foreign_src ? *foreign_src : *english_src;
    result.valid.push_back(std::move(valid));
  }
  return result;
}

SentenceResolution resolve_directions(const DocumentPair& documents,
                                      const LinkRecord& links,
                                      const LanguagePair& pair) {
  const std::string foreign_path =
      side_path(pair.foreign(), documents.relative_path);
  const std::string english_path = side_path(kEnglish, documents.relative_path);

  std::unordered_map<std::string_view, const Sentence*> english_by_id;
  for (const Sentence& s : documents.english.sentences) english_by_id[s.id] = &s;
  std::set<std::string_view> foreign_ids;
  for (const Sentence& s : documents.foreign.sentences) foreign_ids.insert(s.id);

  std::unordered_map<std::string_view, std::vector<std::size_t>> links_of_source;
  std::unordered_map<std::string_view, int> target_uses;
  for (std::size_t i = 0; i < links.links.size(); ++i) {
    for (const std::string& id : links.links[i].source_ids) {
      links_of_source[id].push_back(i);
    }
    for (const std::string& id : links.links[i].target_ids) ++target_uses[id];
  }

  SentenceResolution result;
  auto reject = [&](RejectCode code, const std::string& path,
                    const std::string& id) {
    result.rejects.push_back({code, path, id});
  };

  for (const Sentence& s : documents.foreign.sentences) {
    if (s.language != documents.foreign.language) {
      reject(RejectCode::kSentLangTagMismatch, foreign_path, s.id);
      continue;
    }
    auto found = links_of_source.find(s.id);
    if (found == links_of_source.end()) {
      reject(RejectCode::kSentNoLink, foreign_path, s.id);
      continue;
    }
    const std::vector<std::size_t>& own = found->second;
    if (own.size() != 1 || !links.links[own.front()].one_to_one()) {
      reject(RejectCode::kNonOneToOneLink, foreign_path, s.id);
      continue;
    }
    const std::string& target = links.links[own.front()].target_ids.front();
    auto english = english_by_id.find(target);
    if (english == english_by_id.end()) {
      reject(RejectCode::kSentNoLink, english_path, target);
      continue;
    }
    if (target_uses[target] > 1) {
      reject(RejectCode::kNonOneToOneLink, foreign_path, s.id);
      continue;
    }
    if (english->second->language != documents.english.language) {
      reject(RejectCode::kSentLangTagMismatch, english_path, target);
      continue;
    }
    result.sentences.push_back({english->second->text, s.text,
                                documents.source_language,
                                documents.relative_path});
  }

  // Links naming foreign ids that do not exist.
  std::set<std::string_view> reported;
  for (const Link& link : links.links) {
    for (const std::string& id : link.source_ids) {
      if (!foreign_ids.contains(id) && reported.insert(id).second) {
        reject(RejectCode::kSentNoLink, foreign_path, id);
      }
    }
  }
  return result;
}

ParallelFiles parallel_file_paths(const fs::path& dir, const LanguagePair& pair) {
  const std::string stem = pair.code();
  return {dir / (stem + ".src.en.txt"),
          dir / (stem + ".trg." + pair.foreign() + ".txt"),
          dir / (stem + ".origin.txt")};
}

ParallelFiles emit_parallel_files(std::span<const AlignedSentence> sentences,
                                  const fs::path& out_dir,
                                  const LanguagePair& pair) {
  std::string english, foreign, origin;
  auto append_line = [](std::string& buffer, const std::string& line) {
    if (line.find_first_of("\r\n") != std::string::npos) {
      throw DataError("line break inside an aligned sentence");
    }
    buffer.append(line);
    buffer.push_back('\n');
  };
  for (const AlignedSentence& s : sentences) {
    if (s.original_language != kEnglish &&
        s.original_language != pair.foreign()) {
      throw DataError("origin '" + s.original_language +
                      "' does not belong to pair " + pair.code());
    }
    append_line(english, s.english_text);
    append_line(foreign, s.foreign_text);
    append_line(origin, s.original_language);
  }
  internal::ensure_directory(out_dir);
  ParallelFiles paths = parallel_file_paths(out_dir, pair);
  internal::write_file(paths.english, english);
  internal::write_file(paths.foreign, foreign);
  internal::write_file(paths.origin, origin);
  return paths;
}

std::vector<AlignedSentence> read_parallel_files(const fs::path& dir,
                                                 const LanguagePair& pair) {
  const ParallelFiles paths = parallel_file_paths(dir, pair);
  std::vector<std::string> english = internal::read_lines(paths.english);
  std::vector<std::string> foreign = internal::read_lines(paths.foreign);
  std::vector<std::string> origin = internal::read_lines(paths.origin);
  if (english.size() != foreign.size() || english.size() != origin.size()) {
    throw DataError("parallel files in " + dir.string() +
                    " have different line counts");
  }
  std::vector<AlignedSentence> out;
  out.reserve(english.size());
  for (std::size_t i = 0; i < english.size(); ++i) {
    if (origin[i] != kEnglish && origin[i] != pair.foreign()) {
      throw DataError(paths.origin.string() + ":" + std::to_string(i + 1) +
                      ": unexpected origin '" + origin[i] + "'");
    }
    out.push_back({std::move(english[i]), std::move(foreign[i]),
                   std::move(origin[i]), ""});
  }
  return out;
}

DerivationStats derivation_stats(std::int64_t initial_docs,
                                 std::span<const DocumentPair> valid_docs,
                                 std::span<const AlignedSentence> sentences,
                                 std::span<const RejectReason> rejects,
                                 const LanguagePair& pair) {
  DerivationStats stats;
  stats.initial_docs = initial_docs;
  for (const DocumentPair& doc : valid_docs) {
    if (doc.source_language == kEnglish) {
      ++stats.valid_docs_english_original;
    } else if (doc.source_language == pair.foreign()) {
      ++stats.valid_docs_foreign_original;
    }
  }
  for (const AlignedSentence& s : sentences) {
    if (s.original_language == kEnglish) {
      ++stats.valid_sentences_english_original;
    } else {
      ++stats.valid_sentences_foreign_original;
    }
  }
  stats.valid_sentences_total = stats.valid_sentences_english_original +
                                stats.valid_sentences_foreign_original;
  for (const RejectReason& r : rejects) ++stats.rejects_by_reason[r.code];
  return stats;
}

std::string stats_to_json(const DerivationStats& stats, const LanguagePair& pair) {
  auto fraction = [](std::int64_t part, std::int64_t whole) {
    return whole == 0 ? 0.0
                      : static_cast<double>(part) / static_cast<double>(whole);
  };
  nlohmann::json j;
  j["pair"] = pair.code();
  j["initial_docs"] = stats.initial_docs;
  j["valid_docs_foreign_original"] = stats.valid_docs_foreign_original;
  j["valid_docs_english_original"] = stats.valid_docs_english_original;
  j["valid_docs_foreign_original_fraction"] =
      fraction(stats.valid_docs_foreign_original, stats.initial_docs);
  j["valid_docs_english_original_fraction"] =
      fraction(stats.valid_docs_english_original, stats.initial_docs);
  j["valid_sentences_total"] = stats.valid_sentences_total;
  j["valid_sentences_foreign_original"] = stats.valid_sentences_foreign_original;
  j["valid_sentences_english_original"] = stats.valid_sentences_english_original;
  j["valid_sentences_foreign_original_fraction"] = fraction(
      stats.valid_sentences_foreign_original, stats.valid_sentences_total);
  j["valid_sentences_english_original_fraction"] = fraction(
      stats.valid_sentences_english_original, stats.valid_sentences_total);
  nlohmann::json by_reason = nlohmann::json::object();
  for (const auto& [code, count] : stats.rejects_by_reason) {
    by_reason[std::string(reject_code_name(code))] = count;
  }
  j["rejects_by_reason"] = std::move(by_reason);
  return j.dump(2) + "\n";
}

DerivationStats stats_from_json(std::string_view text) {
  DerivationStats stats;
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    stats.initial_docs = j.at("initial_docs").get<std::int64_t>();
    stats.valid_docs_foreign_original =
        j.at("valid_docs_foreign_original").get<std::int64_t>();
    stats.valid_docs_english_original =
        j.at("valid_docs_english_original").get<std::int64_t>();
    stats.valid_sentences_total = j.at("valid_sentences_total").get<std::int64_t>();
    stats.valid_sentences_foreign_original =
        j.at("valid_sentences_foreign_original").get<std::int64_t>();
    stats.valid_sentences_english_original =
        j.at("valid_sentences_english_original").get<std::int64_t>();
    for (const auto& [name, count] : j.at("rejects_by_reason").items()) {
      stats.rejects_by_reason[parse_reject_code(name)] = count.get<std::int64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad stats file: ") + e.what());
  }
  return stats;
}

std::string rejects_to_tsv(std::span<const RejectReason> rejects) {
  std::string out;
  for (const RejectReason& r : rejects) {
    out.append(r.path);
    out.push_back('\t');
    if (r.sentence_id) out.append(*r.sentence_id);
    out.push_back('\t');
    out.append(reject_code_name(r.code));
    out.push_back('\n');
  }
  return out;
}

Derivation derive_pair(const fs::path& root, const LanguagePair& pair,
                       const CorpusFormat& format) {
  const ScanIndex index = scan_pair(root, pair, format);
  DocumentFilterResult filtered = filter_documents(index, pair);

  Derivation out;
  out.rejects = std::move(filtered.rejects);
  for (const DocumentPair& doc : filtered.valid) {
    SentenceResolution resolved = resolve_directions(doc, doc.link, pair);
    std::move(resolved.sentences.begin(), resolved.sentences.end(),
              std::back_inserter(out.sentences));
    std::move(resolved.rejects.begin(), resolved.rejects.end(),
              std::back_inserter(out.rejects));
  }
  out.stats = derivation_stats(static_cast<std::int64_t>(index.size()),
                               filtered.valid, out.sentences, out.rejects, pair);
  return out;
}

DerivationOutputs write_derivation(const Derivation& derivation,
                                   const fs::path& out_dir,
                                   const LanguagePair& pair) {
  DerivationOutputs outputs;
  outputs.parallel = emit_parallel_files(derivation.sentences, out_dir, pair);
  outputs.stats = out_dir / (pair.code() + ".stats.json");
  outputs.rejects = out_dir / (pair.code() + ".rejects.tsv");
  internal::write_file(outputs.stats, stats_to_json(derivation.stats, pair));
  internal::write_file(outputs.rejects, rejects_to_tsv(derivation.rejects));
  return outputs;
}

}  // namespace transdir
