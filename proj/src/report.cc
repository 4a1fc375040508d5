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
#include <charconv>
#include <cstdio>
#include <set>

#include "file_util.h"
#include "transdir/errors.h"
#include "transdir/experiments.h"

namespace transdir {
namespace fs = std::filesystem;

namespace {

std::string percent(double accuracy) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * accuracy);
  return buf;
}

std::string cell_text(const ResultRow& row) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), " (sd %.2f)", 100.0 * row.std);
  return percent(row.mean_accuracy) + buf;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(const std::string& field, std::string_view what, std::size_t line) {
  T value{};
  const char* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw DataError("results.csv:" + std::to_string(line) + ": bad " +
                    std::string(what) + " '" + field + "'");
  }
  return value;
}

// Distinct values in first-seen order.
template <typename T, typename Fn>
std::vector<T> distinct(const std::vector<const ResultRow*>& rows, Fn key) {
  std::vector<T> out;
  for (const ResultRow* r : rows) {
    T v = key(*r);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

std::vector<const ResultRow*> rows_of(const std::vector<ResultRow>& rows,
                                      std::string_view suite) {
  std::vector<const ResultRow*> out;
  for (const ResultRow& r : rows) {
    if (r.suite == suite) out.push_back(&r);
  }
  return out;
}

std::string table_header(const std::vector<std::string>& columns) {
  std::string line = "|", rule = "|";
  for (const std::string& c : columns) {
    line += " " + c + " |";
    rule += " --- |";
  }
  return line + "\n" + rule + "\n";
}

std::string top_k_text(const std::optional<int>& k) {
  return k ? std::to_string(*k) : std::string("-");
}

std::string table2_section(const std::vector<const ResultRow*>& rows) {
  const auto features = distinct<FeatureKind>(rows, [](const ResultRow& r) { return r.feature; });
  const auto languages =
      distinct<std::string>(rows, [](const ResultRow& r) { return r.languages; });
  std::vector<std::string> columns = {"Languages"};
  for (FeatureKind f : features) columns.emplace_back(feature_kind_name(f));
  columns.emplace_back("Samples");
  std::string out = "## Accuracy by language set\n\n" + table_header(columns);
  for (const std::string& lang : languages) {
    std::string line = "| " + lang + " |";
    std::int64_t samples = 0;
    for (FeatureKind f : features) {
      auto it = std::find_if(rows.begin(), rows.end(), [&](const ResultRow* r) {
        return r->languages == lang && r->feature == f;
      });
      line += " " + (it == rows.end() ? std::string("-") : cell_text(**it)) + " |";
      if (it != rows.end()) samples = (*it)->n_samples;
    }
    out += line + " " + std::to_string(samples) + " |\n";
  }
  out +=
      "\nRows named by a pair use chunks built from that pair alone. \"all\" "
      "merges the per-pair chunks into one dataset. \"pooled\" shuffles the "
      "sentences of all pairs within each class before chunking.\n\n";
  return out;
}

std::string fig2_section(const std::vector<const ResultRow*>& rows) {
  const auto features = distinct<FeatureKind>(rows, [](const ResultRow& r) { return r.feature; });
  const auto sizes =
      distinct<std::int64_t>(rows, [](const ResultRow& r) { return r.chunk_size; });
  std::vector<std::string> columns = {"Chunk size"};
  for (FeatureKind f : features) columns.emplace_back(feature_kind_name(f));
  std::string out = "## Accuracy by chunk size\n\n" + table_header(columns);
  for (std::int64_t size : sizes) {
    std::string line = "| " + std::to_string(size) + " |";
    for (FeatureKind f : features) {
      auto it = std::find_if(rows.begin(), rows.end(), [&](const ResultRow* r) {
        return r->chunk_size == size && r->feature == f;
      });
      line += " " + (it == rows.end() ? std::string("-") : cell_text(**it)) + " |";
    }
    out += line + "\n";
  }
  out += "\n## Samples per chunk size\n\n" +
         table_header({"Chunk size", "Number of samples"});
  for (std::int64_t size : sizes) {
    auto it = std::find_if(rows.begin(), rows.end(),
                           [&](const ResultRow* r) { return r->chunk_size == size; });
    out += "| " + std::to_string(size) + " | " + std::to_string((*it)->n_samples) + " |\n";
  }
  return out + "\n";
}

std::string fig3_section(const std::vector<const ResultRow*>& rows) {
  const auto features = distinct<FeatureKind>(rows, [](const ResultRow& r) { return r.feature; });
  const auto ks = distinct<std::optional<int>>(rows, [](const ResultRow& r) { return r.top_k; });
  std::vector<std::string> columns = {"k"};
  for (FeatureKind f : features) columns.emplace_back(feature_kind_name(f));
  std::string out = "## Accuracy by top-k n-grams\n\n" + table_header(columns);
  for (const std::optional<int>& k : ks) {
    std::string line = "| " + top_k_text(k) + " |";
    for (FeatureKind f : features) {
      auto it = std::find_if(rows.begin(), rows.end(), [&](const ResultRow* r) {
        return r->top_k == k && r->feature == f;
      });
      line += " " + (it == rows.end() ? std::string("-") : cell_text(**it)) + " |";
    }
    out += line + "\n";
  }
  return out + "\n";
}

std::string generic_section(std::string_view suite,
                            const std::vector<const ResultRow*>& rows) {
  std::string out = "## Suite " + std::string(suite) + "\n\n" +
                    table_header({"Languages", "Feature", "Chunk size", "k",
                                  "Accuracy", "Samples"});
  for (const ResultRow* r : rows) {
    out += "| " + r->languages + " | " + std::string(feature_kind_name(r->feature)) +
           " | " + std::to_string(r->chunk_size) + " | " + top_k_text(r->top_k) +
           " | " + cell_text(*r) + " | " + std::to_string(r->n_samples) + " |\n";
  }
  return out + "\n";
}

std::string series(std::string_view x_name,
                   const std::vector<std::pair<std::string, double>>& points) {
  std::string out = "# " + std::string(x_name) + " mean_accuracy\n";
  for (const auto& [x, y] : points) out += x + " " + internal::format_double(y) + "\n";
  return out;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace

std::string format_results_csv(const std::vector<ResultRow>& rows) {
  std::string out(kResultsHeader);
  out.push_back('\n');
  for (const ResultRow& r : rows) {
    if (r.languages.find_first_of(",\n") != std::string::npos ||
        r.suite.find_first_of(",\n") != std::string::npos) {
      throw DataError("result field contains a comma or newline");
    }
    out += r.suite + "," + r.languages + "," + std::string(feature_kind_name(r.feature)) +
           "," + std::to_string(r.chunk_size) + "," +
           (r.top_k ? std::to_string(*r.top_k) : std::string()) + "," +
           std::string(model_kind_name(r.model)) + "," + std::to_string(r.folds) + "," +
           internal::format_double(r.mean_accuracy) + "," +
           internal::format_double(r.std) + "," + std::to_string(r.n_samples) + "," +
           std::to_string(r.seed) + "\n";
  }
  return out;
}

std::vector<ResultRow> parse_results_csv(std::string_view content) {
  std::vector<ResultRow> rows;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1) {
      if (line != kResultsHeader) throw DataError("results.csv: unexpected header");
      continue;
    }
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 11) {
      throw DataError("results.csv:" + std::to_string(line_no) + ": expected 11 fields");
    }
    ResultRow r;
    try {
      r.suite = f[0];
      r.languages = f[1];
      r.feature = parse_feature_kind(f[2]);
      r.model = parse_model_kind(f[5]);
    } catch (const ConfigError& e) {
      throw DataError("results.csv:" + std::to_string(line_no) + ": " + e.what());
    }
    r.chunk_size = parse_number<std::int64_t>(f[3], "chunk_size", line_no);
    if (!f[4].empty()) r.top_k = parse_number<int>(f[4], "top_k", line_no);
    r.folds = parse_number<int>(f[6], "folds", line_no);
    r.mean_accuracy = parse_number<double>(f[7], "mean_accuracy", line_no);
    r.std = parse_number<double>(f[8], "std", line_no);
    r.n_samples = parse_number<std::int64_t>(f[9], "n_samples", line_no);
    r.seed = parse_number<std::uint64_t>(f[10], "seed", line_no);
    if (r.mean_accuracy < 0.0 || r.mean_accuracy > 1.0) {
      throw DataError("results.csv:" + std::to_string(line_no) +
                      ": mean_accuracy outside [0, 1]");
    }
    rows.push_back(std::move(r));
  }
  if (line_no == 0) throw DataError("results.csv: empty file");
  return rows;
}

std::vector<ResultRow> read_results_csv(const fs::path& path) {
  return parse_results_csv(internal::read_file(path));
}

std::string format_summary(const std::vector<ResultRow>& rows,
                           const std::vector<std::string>& notes) {
  std::string out = "# Translation direction experiments\n\n";
  std::set<std::string> models, folds, seeds;
  for (const ResultRow& r : rows) {
    models.insert(std::string(model_kind_name(r.model)));
    folds.insert(std::to_string(r.folds));
    seeds.insert(std::to_string(r.seed));
  }
  auto joined = [](const std::set<std::string>& s) {
    std::string out;
    for (const std::string& v : s) out += (out.empty() ? "" : ", ") + v;
    return out;
  };
  out += "Model: " + joined(models) + ". Folds: " + joined(folds) +
         " (stratified). Seed: " + joined(seeds) +
         ". Every dataset is balanced, so chance is 50%. Cells show mean fold "
         "accuracy and its standard deviation in points.\n\n";

  std::vector<std::string> suites;
  for (const ResultRow& r : rows) {
    if (std::find(suites.begin(), suites.end(), r.suite) == suites.end()) {
      suites.push_back(r.suite);
    }
  }
  for (const std::string& suite : suites) {
    const auto selected = rows_of(rows, suite);
    if (suite == suite_name(Suite::kTable2)) {
      out += table2_section(selected);
    } else if (suite == suite_name(Suite::kFig2ChunkSweep)) {
      out += fig2_section(selected);
    } else if (suite == suite_name(Suite::kFig3TopkSweep)) {
      out += fig3_section(selected);
    } else {
      out += generic_section(suite, selected);
    }
  }
  if (!notes.empty()) {
    out += "## Notes\n\n";
    for (const std::string& n : notes) out += "- " + n + "\n";
  }
  return out;
}

std::map<std::string, std::string> format_plot_data(const std::vector<ResultRow>& rows) {
  std::map<std::string, std::string> files;

  const auto table2 = rows_of(rows, suite_name(Suite::kTable2));
  if (!table2.empty()) {
    std::vector<std::pair<std::string, double>> points;
    for (const std::string& lang :
         distinct<std::string>(table2, [](const ResultRow& r) { return r.languages; })) {
      if (lang == kAllLanguages || lang == kPooled) continue;
      double sum = 0.0;
      int n = 0;
      for (const ResultRow* r : table2) {
        if (r->languages == lang) {
          sum += r->mean_accuracy;
          ++n;
        }
      }
      points.emplace_back(lang, sum / n);
    }
    if (!points.empty()) files["fig1_languages.dat"] = series("languages", points);
  }

  const auto fig2 = rows_of(rows, suite_name(Suite::kFig2ChunkSweep));
  for (FeatureKind f :
       distinct<FeatureKind>(fig2, [](const ResultRow& r) { return r.feature; })) {
    std::vector<std::pair<std::string, double>> points;
    for (const ResultRow* r : fig2) {
      if (r->feature == f) points.emplace_back(std::to_string(r->chunk_size), r->mean_accuracy);
    }
    const std::string name =
        f == FeatureKind::kPos2 ? "fig2_chunk_size.dat"
                                : "fig2_chunk_size_" + lowercase(feature_kind_name(f)) + ".dat";
    files[name] = series("chunk_size", points);
  }

  const auto fig3 = rows_of(rows, suite_name(Suite::kFig3TopkSweep));
  for (FeatureKind f :
       distinct<FeatureKind>(fig3, [](const ResultRow& r) { return r.feature; })) {
    std::vector<std::pair<std::string, double>> points;
    for (const ResultRow* r : fig3) {
      if (r->feature == f) points.emplace_back(top_k_text(r->top_k), r->mean_accuracy);
    }
    std::string name = "fig3_" + lowercase(feature_kind_name(f)) + ".dat";
    if (f == FeatureKind::kFwPos3) name = "fig3a_fw_pos3.dat";
    if (f == FeatureKind::kFwPos2) name = "fig3b_fw_pos2.dat";
    files[name] = series("top_k", points);
  }
  return files;
}

std::vector<fs::path> emit_report(const std::vector<ResultRow>& rows,
                                  const std::vector<std::string>& notes,
                                  const fs::path& out_dir) {
  if (rows.empty()) throw ConfigError("no result rows to report");
  internal::ensure_directory(out_dir);
  std::vector<fs::path> written;
  auto emit = [&](const std::string& name, const std::string& content) {
    internal::write_file(out_dir / name, content);
    written.push_back(out_dir / name);
  };
  emit("results.csv", format_results_csv(rows));
  emit("summary.md", format_summary(rows, notes));
  for (const auto& [name, content] : format_plot_data(rows)) emit(name, content);
  return written;
}

}  // namespace transdir
