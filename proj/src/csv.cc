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

#include "elmddos/csv.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "elmddos/errors.h"
#include "elmddos/preprocess.h"
#include "elmddos/text.h"

namespace elmddos {
namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

std::string quote_if_needed(const std::string& s, char delimiter) {
  if (s.find(delimiter) == std::string::npos && s.find('"') == std::string::npos &&
      s.find('\n') == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void CsvSchema::validate() const {
  if (label_column.empty()) throw ValidationError("csv schema: label column must be named");
  if (!std::isprint(static_cast<unsigned char>(delimiter)) && delimiter != '\t') {
    throw ValidationError("csv schema: delimiter must be printable");
  }
  if (delimiter == '"') throw ValidationError("csv schema: delimiter cannot be a quote");
}

std::vector<std::string> FeatureLayout::feature_names() const {
  std::vector<std::string> names;
  for (const auto& col : raw_columns) {
    const auto it = vocabulary.find(col);
    if (it == vocabulary.end()) {
      names.push_back(col);
    } else {
      for (const auto& v : it->second) names.push_back(col + "=" + v);
    }
  }
  return names;
}

std::size_t FeatureLayout::n_features() const {
  std::size_t n = 0;
  for (const auto& col : raw_columns) {
    const auto it = vocabulary.find(col);
    n += it == vocabulary.end() ? 1 : it->second.size();
  }
  return n;
}

void FeatureLayout::expand(std::span<const std::string_view> cells, std::span<double> out) const {
  if (cells.size() != raw_columns.size() || out.size() != n_features()) {
    throw ShapeError("feature layout: expected " + std::to_string(raw_columns.size()) +
                     " cells, got " + std::to_string(cells.size()));
  }
  std::size_t pos = 0;
  for (std::size_t c = 0; c < raw_columns.size(); ++c) {
    const auto it = vocabulary.find(raw_columns[c]);
    if (it == vocabulary.end()) {
      out[pos++] = parse_double(cells[c]).value_or(kMissing);
      continue;
    }
    const std::string_view value = trim(cells[c]);
    for (const auto& v : it->second) {
      out[pos++] = value.empty() ? kMissing : (value == v ? 1.0 : 0.0);
    }
  }
}

std::vector<std::string> split_csv_record(std::string_view line, char delimiter) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == delimiter) {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

LoadedCsv read_csv(std::istream& in, const CsvSchema& schema, const std::string& source,
                   const FeatureLayout* expected) {
  schema.validate();
  std::string line;
  std::size_t line_no = 0;
  do {
    if (!std::getline(in, line)) throw DataError(source + ": empty file (no header row)");
    ++line_no;
  } while (trim(line).empty());

  std::vector<std::string> header = split_csv_record(line, schema.delimiter);
  for (auto& h : header) h = std::string(trim(h));
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);

  const auto label_it = std::find(header.begin(), header.end(), schema.label_column);
  if (label_it == header.end()) {
    throw DataError(source + ": label column '" + schema.label_column + "' not found in header");
  }
  const std::size_t label_idx = static_cast<std::size_t>(label_it - header.begin());

  // Header positions of the layout's raw columns.
  FeatureLayout layout;
  std::vector<std::size_t> raw_pos;
  if (expected != nullptr) {
    layout = *expected;
    std::vector<std::string> missing;
    for (const auto& col : layout.raw_columns) {
      const auto it = std::find(header.begin(), header.end(), col);
      if (it == header.end()) {
        missing.push_back(col);
      } else {
        raw_pos.push_back(static_cast<std::size_t>(it - header.begin()));
      }
    }
    if (!missing.empty()) {
      throw DataError(source + ": columns do not match the model.\n  model expects: " +
                      join(layout.raw_columns) + "\n  file provides: " + join(header) +
                      "\n  missing: " + join(missing));
    }
  } else {
    const std::set<std::string> excluded(schema.exclude_columns.begin(),
                                         schema.exclude_columns.end());
    std::set<std::string> seen;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i == label_idx || excluded.count(header[i])) continue;
      if (!seen.insert(header[i]).second) {
        throw DataError(source + ": duplicate column '" + header[i] + "'");
      }
      layout.raw_columns.push_back(header[i]);
      raw_pos.push_back(i);
    }
    if (layout.raw_columns.empty()) throw DataError(source + ": no feature columns");
  }

  // Read every record as text first; categorical vocabularies need a full pass.
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> record_lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_record(line, schema.delimiter);
    if (fields.size() != header.size()) {
      throw DataError(source + ": line " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, header has " +
                      std::to_string(header.size()));
    }
    records.push_back(std::move(fields));
    record_lines.push_back(line_no);
  }
  if (records.empty()) throw DataError(source + ": no data rows");

  if (expected == nullptr) {
    for (const auto& cat : schema.categorical_columns) {
      const auto it = std::find(layout.raw_columns.begin(), layout.raw_columns.end(), cat);
      if (it == layout.raw_columns.end()) {
        throw DataError(source + ": categorical column '" + cat + "' not found");
      }
      const std::size_t pos = raw_pos[static_cast<std::size_t>(it - layout.raw_columns.begin())];
      std::set<std::string> values;
      for (const auto& rec : records) {
        const std::string_view v = trim(rec[pos]);
        if (!v.empty()) values.emplace(v);
      }
      layout.vocabulary[cat] = {values.begin(), values.end()};
    }
  }

  LoadedCsv out;
  RawFlowTable& t = out.table;
  t.rows = records.size();
  t.cols = layout.n_features();
  t.cells.resize(t.rows * t.cols);
  t.feature_names = layout.feature_names();
  t.source = source;
  t.labels.reserve(t.rows);
  t.categories.reserve(t.rows);
  std::vector<std::string_view> cells(raw_pos.size());
  for (std::size_t r = 0; r < records.size(); ++r) {
    for (std::size_t c = 0; c < raw_pos.size(); ++c) cells[c] = records[r][raw_pos[c]];
    layout.expand(cells, std::span<double>(t.cells.data() + r * t.cols, t.cols));
    const std::string& category = records[r][label_idx];
    if (trim(category).empty()) {
      throw DataError(source + ": line " + std::to_string(record_lines[r]) + " has an empty " +
                      schema.label_column + " value");
    }
    t.labels.push_back(binarize_label(category, schema.benign_value));
    t.categories.emplace_back(trim(category));
  }
  out.layout = std::move(layout);
  return out;
}

LoadedCsv load_csv(const std::string& path, const CsvSchema& schema,
                   const FeatureLayout* expected) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open input file '" + path + "'");
  return read_csv(in, schema, path, expected);
}

void write_csv(std::ostream& out, const FlowDataset& data, const CsvSchema& schema) {
  const char d = schema.delimiter;
  for (const auto& name : data.feature_names()) out << quote_if_needed(name, d) << d;
  out << quote_if_needed(schema.label_column, d) << '\n';
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (double v : data.features().row(r)) out << format_double(v) << d;
    const std::string label = !data.categories().empty() ? data.categories()[r]
                              : data.labels()[r] == 0     ? schema.benign_value
                                                          : std::string("Attack");
    out << quote_if_needed(label, d) << '\n';
  }
}

void write_csv_file(const std::string& path, const FlowDataset& data, const CsvSchema& schema) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  write_csv(out, data, schema);
  if (!out) throw DataError("write to '" + path + "' failed");
}

std::string dataset_fingerprint(const FlowDataset& data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto feed = [&h](const void* p, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 0x100000001B3ULL;
    }
  };
  const std::uint64_t shape[2] = {data.rows(), data.cols()};
  feed(shape, sizeof shape);
  feed(data.features().data().data(), data.features().data().size_bytes());
  feed(data.labels().data(), data.labels().size());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace elmddos
