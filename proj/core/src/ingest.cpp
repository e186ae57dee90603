// Copyright 2026 The mpx Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpx/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mpx/csv.hpp"
#include "mpx/errors.hpp"
#include "mpx/random.hpp"

namespace mpx {

std::string_view to_string(IngestErrc code) {
  switch (code) {
    case IngestErrc::kMissingFile: return "missing file";
    case IngestErrc::kMissingColumn: return "missing column";
    case IngestErrc::kMalformedCsv: return "malformed csv";
    case IngestErrc::kEmptyVocabulary: return "empty vocabulary";
    case IngestErrc::kNoUsableRecords: return "no usable records";
    case IngestErrc::kSingleClass: return "single-class dataset";
    case IngestErrc::kClassTooSmall: return "class too small";
  }
  return "ingest error";
}

}  // namespace mpx

namespace mpx::ingest {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_quote(char c) { return c == '"' || c == '\'' || c == '`'; }

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

Dataset vectorize_all(std::span<const RawRecord> records, SymptomVocabulary vocab,
                      const FormatConfig& format, IngestReport& report) {
  Dataset dataset;
  dataset.samples.reserve(records.size());
  for (const RawRecord& r : records) {
    auto sample = vectorize(r, vocab, format, &report.unknown_tokens);
    if (!sample) {
      ++report.dropped_rows;
      continue;
    }
    (sample->label == 1 ? report.positive : report.negative) += 1;
    dataset.samples.push_back(std::move(*sample));
  }
  dataset.vocabulary = std::move(vocab);
  return dataset;
}

}  // namespace

std::string normalize_token(std::string_view raw) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  // Peel whitespace and quotes alternately: ' "fever" ' -> fever.
  for (;;) {
    std::size_t b = begin, e = end;
    while (b < e && is_space(raw[b])) ++b;
    while (e > b && is_space(raw[e - 1])) --e;
    while (b < e && is_quote(raw[b])) ++b;
    while (e > b && is_quote(raw[e - 1])) --e;
    if (b == begin && e == end) break;
    begin = b;
    end = e;
  }

  std::string out;
  out.reserve(end - begin);
  bool pending_space = false;
  for (std::size_t i = begin; i < end; ++i) {
    char c = raw[i];
    if (is_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(ascii_lower(c));
  }
  return out;
}

std::set<std::string> parse_symptoms(std::string_view symptoms_text, std::string_view delimiters) {
  std::set<std::string> tokens;
  std::size_t start = 0;
  while (start <= symptoms_text.size()) {
    std::size_t stop = symptoms_text.find_first_of(delimiters, start);
    if (stop == std::string_view::npos) stop = symptoms_text.size();
    std::string token = normalize_token(symptoms_text.substr(start, stop - start));
    if (!token.empty()) tokens.insert(std::move(token));
    start = stop + 1;
  }
  return tokens;
}

std::optional<int> parse_status(std::string_view status_text, const FormatConfig& format) {
  auto it = format.status_labels.find(normalize_token(status_text));
  if (it == format.status_labels.end()) return std::nullopt;
  return it->second;
}

SymptomVocabulary build_vocabulary(std::span<const RawRecord> records, const FormatConfig& format) {
  std::set<std::string> all;
  for (const RawRecord& r : records) {
    if (!parse_status(r.status_text, format)) continue;
    all.merge(parse_symptoms(r.symptoms_text, format.delimiters));
  }
  if (all.empty()) {
    throw IngestError(IngestErrc::kEmptyVocabulary, "no symptom tokens in any label-bearing record");
  }
  return SymptomVocabulary(std::vector<std::string>(all.begin(), all.end()));
}

std::optional<Sample> vectorize(const RawRecord& record, const SymptomVocabulary& vocab,
                                const FormatConfig& format, std::size_t* unknown_tokens) {
  auto label = parse_status(record.status_text, format);
  if (!label) return std::nullopt;
  Sample sample;
  sample.label = *label;
  sample.features.assign(vocab.size(), 0.0);
  for (const std::string& token : parse_symptoms(record.symptoms_text, format.delimiters)) {
    if (auto idx = vocab.index_of(token)) {
      sample.features[*idx] = 1.0;
    } else if (unknown_tokens) {
      ++*unknown_tokens;
    }
  }
  return sample;
}

std::vector<RawRecord> parse_records(std::string_view csv_text, const FormatConfig& format) {
  std::vector<csv::Row> rows = csv::parse(csv_text);
  if (rows.empty()) {
    throw IngestError(IngestErrc::kMissingColumn, "no header row");
  }
  const csv::Row& header = rows.front();
  auto column = [&](const std::string& name) {
    auto it = std::find_if(header.begin(), header.end(),
                           [&](const std::string& h) { return normalize_token(h) == normalize_token(name); });
    if (it == header.end()) {
      throw IngestError(IngestErrc::kMissingColumn, "header has no '" + name + "' column");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t symptom_col = column(format.symptom_column);
  const std::size_t status_col = column(format.status_column);

  std::vector<RawRecord> records;
  records.reserve(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const csv::Row& row = rows[i];
    RawRecord r;
    if (symptom_col < row.size()) r.symptoms_text = row[symptom_col];
    if (status_col < row.size()) r.status_text = row[status_col];
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<RawRecord> read_records(const std::filesystem::path& path, const FormatConfig& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError(IngestErrc::kMissingFile, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_records(buf.str(), format);
}

namespace {

LoadedDataset load_records(std::span<const RawRecord> records, const FormatConfig& format,
                           const SymptomVocabulary* vocabulary) {
  const bool any_label = std::any_of(records.begin(), records.end(), [&](const RawRecord& r) {
    return parse_status(r.status_text, format).has_value();
  });
  if (!any_label) {
    throw IngestError(IngestErrc::kNoUsableRecords,
                      std::to_string(records.size()) + " rows, none with a mappable status");
  }

  LoadedDataset loaded;
  loaded.report.total_rows = records.size();
  SymptomVocabulary vocab = vocabulary ? *vocabulary : build_vocabulary(records, format);
  loaded.dataset = vectorize_all(records, std::move(vocab), format, loaded.report);
  if (loaded.report.positive == 0 || loaded.report.negative == 0) {
    throw IngestError(IngestErrc::kSingleClass,
                      std::to_string(loaded.report.positive) + " positive, " +
                          std::to_string(loaded.report.negative) + " negative");
  }
  return loaded;
}

}  // namespace

LoadedDataset load_dataset_from_text(std::string_view csv_text, const FormatConfig& format,
                                     const SymptomVocabulary* vocabulary) {
  return load_records(parse_records(csv_text, format), format, vocabulary);
}

LoadedDataset load_dataset(const std::filesystem::path& path, const FormatConfig& format,
                           const SymptomVocabulary* vocabulary) {
  if (!std::filesystem::is_regular_file(path)) {
    throw IngestError(IngestErrc::kMissingFile, "no such file '" + path.string() + "'");
  }
  return load_records(read_records(path, format), format, vocabulary);
}

Partition stratified_split(const Dataset& dataset, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test_fraction must lie in (0,1)");
  }
  std::vector<bool> in_test(dataset.size(), false);
  Rng rng(seed);
  for (int label : {0, 1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      if (dataset.samples[i].label == label) members.push_back(i);
    }
    if (members.size() < 2) {
      throw IngestError(IngestErrc::kClassTooSmall, "class " + std::to_string(label) + " has " +
                                                        std::to_string(members.size()) +
                                                        " samples, need at least 2");
    }
    for (std::size_t i = members.size() - 1; i > 0; --i) {
      std::swap(members[i], members[rng.uniform_index(i + 1)]);
    }
    const double wanted = std::floor(static_cast<double>(members.size()) * test_fraction + 0.5);
    std::size_t n_test = std::max<std::size_t>(1, static_cast<std::size_t>(wanted));
    n_test = std::min(n_test, members.size() - 1);
    for (std::size_t i = 0; i < n_test; ++i) in_test[members[i]] = true;
  }

  Partition part;
  part.train.vocabulary = dataset.vocabulary;
  part.test.vocabulary = dataset.vocabulary;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    (in_test[i] ? part.test : part.train).samples.push_back(dataset.samples[i]);
  }
  return part;
}

void write_vocabulary(const SymptomVocabulary& vocab, std::ostream& out) {
  for (const std::string& token : vocab.tokens()) out << token << '\n';
}

}  // namespace mpx::ingest
