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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpx/dataset.hpp"

namespace mpx::ingest {

/// One case row, kept verbatim until normalization.
struct RawRecord {
  std::string symptoms_text;
  std::string status_text;
};

struct FormatConfig {
  std::string symptom_column = "Symptoms";
  std::string status_column = "Status";
  /// Each character is a list separator.
  std::string delimiters = ";,";
  /// Normalized status -> label. Statuses not listed are dropped.
  std::map<std::string, int> status_labels = {{"confirmed", 1}, {"discarded", 0}};
};

/// Lowercase (ASCII), trim, collapse whitespace runs, strip surrounding quotes.
std::string normalize_token(std::string_view raw);

std::set<std::string> parse_symptoms(std::string_view symptoms_text,
                                     std::string_view delimiters = ";,");

std::optional<int> parse_status(std::string_view status_text,
                                const FormatConfig& format = {});

/// Sorted union of the tokens of every label-bearing record.
/// Throws IngestError(kEmptyVocabulary) when that union is empty.
SymptomVocabulary build_vocabulary(std::span<const RawRecord> records,
                                   const FormatConfig& format = {});

/// Returns nullopt when the status is unmappable. In-vocabulary tokens set
/// their feature to 1.0; the rest are added to `*unknown_tokens` if given.
std::optional<Sample> vectorize(const RawRecord& record, const SymptomVocabulary& vocab,
                                const FormatConfig& format = {},
                                std::size_t* unknown_tokens = nullptr);

/// Reads the two configured columns of a CSV file.
std::vector<RawRecord> read_records(const std::filesystem::path& path,
                                    const FormatConfig& format = {});
std::vector<RawRecord> parse_records(std::string_view csv_text,
                                     const FormatConfig& format = {});

struct IngestReport {
  std::size_t total_rows = 0;
  std::size_t dropped_rows = 0;
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t unknown_tokens = 0;
};

struct LoadedDataset {
  Dataset dataset;
  IngestReport report;
};

// Loads and vectorizes a CSV. With `vocabulary` set, rows are vectorized
// against it instead of a freshly built one (unknown tokens are tallied).
// Errors: kMissingFile, kMissingColumn, kMalformedCsv, kEmptyVocabulary,
// kNoUsableRecords, kSingleClass.
LoadedDataset load_dataset(const std::filesystem::path& path, const FormatConfig& format = {},
                           const SymptomVocabulary* vocabulary = nullptr);
LoadedDataset load_dataset_from_text(std::string_view csv_text, const FormatConfig& format = {},
                                     const SymptomVocabulary* vocabulary = nullptr);

struct Partition {
  Dataset train;
  Dataset test;
};

// Per class, max(1, round_half_up(count * test_fraction)) samples go to the
// test side, capped so at least one stays in train. Members are chosen by a
// seeded Fisher-Yates shuffle; both sides keep the input's relative order.
// Throws ConfigError for a fraction outside (0,1) and
// IngestError(kClassTooSmall) when a class has fewer than two samples.
Partition stratified_split(const Dataset& dataset, double test_fraction, std::uint64_t seed);

/// One token per line, in index order.
void write_vocabulary(const SymptomVocabulary& vocab, std::ostream& out);

}  // namespace mpx::ingest
