/*
 * Copyright 2026 The elmddos Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ELMDDOS_CSV_H_
#define ELMDDOS_CSV_H_

// Flow-record CSV ingestion and export.
//
// Files are UTF-8 with a mandatory header row. Fields may be wrapped in
// double quotes ("" escapes a quote). Numeric cells parse as doubles; empty
// or unparseable cells become NaN and are dropped later by clean().
// Columns listed as categorical are one-hot encoded into "<column>=<value>"
// features, one per value of a sorted vocabulary.

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elmddos/dataset.h"

namespace elmddos {

struct CsvSchema {
  std::string label_column = "Label";
  std::string benign_value = "Benign";
  char delimiter = ',';
  std::vector<std::string> exclude_columns;
  std::vector<std::string> categorical_columns;

  // Throws ValidationError on an empty label column or unprintable delimiter.
  void validate() const;
};

using CategoryVocabulary = std::map<std::string, std::vector<std::string>>;

// How the input columns of a CSV turn into model features.
struct FeatureLayout {
  std::vector<std::string> raw_columns;  // header order
  CategoryVocabulary vocabulary;         // categorical raw column -> sorted values

  std::vector<std::string> feature_names() const;
  std::size_t n_features() const;
  // Expands one record whose cells follow raw_columns. Missing numeric or
  // categorical cells yield NaN; an unseen category yields all zeros.
  void expand(std::span<const std::string_view> cells, std::span<double> out) const;

  friend bool operator==(const FeatureLayout&, const FeatureLayout&) = default;
};

struct LoadedCsv {
  RawFlowTable table;
  FeatureLayout layout;
};

// Splits one record on `delimiter`, honouring double quotes. A trailing
// carriage return is ignored.
std::vector<std::string> split_csv_record(std::string_view line, char delimiter);

// With `expected` set, the file must contain every raw column of that
// layout (any order, extra columns ignored) and its vocabulary is reused.
// Throws DataError for an unreadable file, missing label column, ragged
// rows (with line number) or no data rows.
LoadedCsv load_csv(const std::string& path, const CsvSchema& schema,
                   const FeatureLayout* expected = nullptr);
LoadedCsv read_csv(std::istream& in, const CsvSchema& schema, const std::string& source,
                   const FeatureLayout* expected = nullptr);

// Header = feature names then the label column. The label cell is the row's
// category text when present, otherwise benign_value or "Attack".
void write_csv(std::ostream& out, const FlowDataset& data, const CsvSchema& schema = {});
void write_csv_file(const std::string& path, const FlowDataset& data,
                    const CsvSchema& schema = {});

// 16 hex digits of FNV-1a over feature bytes, labels and shape.
std::string dataset_fingerprint(const FlowDataset& data);

}  // namespace elmddos

#endif  // ELMDDOS_CSV_H_
