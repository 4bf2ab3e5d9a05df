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

#include "elmddos/model_io.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "elmddos/errors.h"
#include "elmddos/text.h"

namespace elmddos {
namespace {

constexpr std::string_view kMagic = "elmddos-model";

void write_list(std::ostream& out, const std::string& key, const std::vector<std::string>& items) {
  out << key << '=' << items.size() << '\n';
  for (const auto& item : items) out << "- " << item << '\n';
}

void write_doubles(std::ostream& out, const std::string& key, const std::vector<double>& values) {
  out << key << '=' << values.size() << '\n';
  for (double v : values) out << format_double(v) << '\n';
}

void write_matrix(std::ostream& out, const std::string& key, const Matrix& m) {
  out << key << '=' << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ' ';
      out << format_double(row[c]);
    }
    out << '\n';
  }
}

// Sequential reader; every accessor throws IntegrityError on mismatch.
class Cursor {
 public:
  explicit Cursor(std::istream& in) : in_(in) {}

  std::string line() {
    std::string s;
    if (!std::getline(in_, s)) fail("unexpected end of file");
    ++line_no_;
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
  }

  void expect_line(std::string_view want) {
    const std::string got = line();
    if (got != want) fail("expected '" + std::string(want) + "', found '" + got + "'");
  }

  std::string value(std::string_view key) {
    const std::string got = line();
    if (got.size() <= key.size() || got.compare(0, key.size(), key) != 0 ||
        got[key.size()] != '=') {
      fail("expected key '" + std::string(key) + "', found '" + got + "'");
    }
    return got.substr(key.size() + 1);
  }

  std::uint64_t count(std::string_view key) { return to_count(value(key), key); }

  double number(std::string_view key) { return to_double(value(key), key); }

  std::vector<std::string> list(std::string_view key) {
    const std::uint64_t n = count(key);
    std::vector<std::string> items;
    for (std::uint64_t i = 0; i < n; ++i) {
      const std::string s = line();
      if (s.rfind("- ", 0) != 0) fail("expected list item for '" + std::string(key) + "'");
      items.push_back(s.substr(2));
    }
    return items;
  }

  std::vector<double> doubles(std::string_view key) {
    const std::uint64_t n = count(key);
    std::vector<double> out;
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(to_double(line(), key));
    return out;
  }

  Matrix matrix(std::string_view key) {
    const auto dims = split_view(value(key), ' ');
    if (dims.size() != 2) fail("bad dimensions for '" + std::string(key) + "'");
    const std::uint64_t rows = to_count(dims[0], key);
    const std::uint64_t cols = to_count(dims[1], key);
    std::vector<double> data;
    data.reserve(rows * cols);
    for (std::uint64_t r = 0; r < rows; ++r) {
      const std::string s = line();
      const auto cells = split_view(s, ' ');
      if (cells.size() != cols) {
        fail("row " + std::to_string(r) + " of '" + std::string(key) + "' has " +
             std::to_string(cells.size()) + " values, expected " + std::to_string(cols));
      }
      for (auto cell : cells) data.push_back(to_double(cell, key));
    }
    return Matrix(rows, cols, std::move(data));
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw IntegrityError("model file, line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::uint64_t to_count(std::string_view s, std::string_view key) const {
    std::uint64_t v = 0;
    s = trim(s);
    if (s.empty()) fail("empty count for '" + std::string(key) + "'");
    for (char c : s) {
      if (c < '0' || c > '9') fail("bad count for '" + std::string(key) + "'");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
  }

  double to_double(std::string_view s, std::string_view key) const {
    const auto v = parse_double(s);
    if (!v || !std::isfinite(*v)) fail("bad number for '" + std::string(key) + "'");
    return *v;
  }

  std::istream& in_;
  std::size_t line_no_ = 0;
};

std::vector<std::string> indices_to_strings(const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(std::to_string(i));
  return out;
}

}  // namespace

void ModelArtifact::validate() const {
  auto fail = [](const std::string& what) { throw IntegrityError("model artifact: " + what); };
  if (format_version != kModelFormatVersion) {
    throw UnsupportedVersionError("model artifact: unsupported format version " +
                                  std::to_string(format_version));
  }
  const std::size_t n_expanded = layout.n_features();
  if (selection.correlations.size() != n_expanded) {
    fail(std::to_string(selection.correlations.size()) + " correlations for " +
         std::to_string(n_expanded) + " features");
  }
  if (selection.kept_indices.empty()) fail("no selected features");
  for (std::size_t i = 0; i < selection.kept_indices.size(); ++i) {
    if (selection.kept_indices[i] >= n_expanded ||
        (i > 0 && selection.kept_indices[i] <= selection.kept_indices[i - 1])) {
      fail("selected feature indices must be ascending and < " + std::to_string(n_expanded));
    }
  }
  const std::size_t k = selection.kept_indices.size();
  if (scaler.means.size() != k || scaler.stds.size() != k) {
    fail("scaler has " + std::to_string(scaler.means.size()) + " means and " +
         std::to_string(scaler.stds.size()) + " stds for " + std::to_string(k) + " features");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!std::isfinite(scaler.means[i]) || !(scaler.stds[i] > 0.0) ||
        !std::isfinite(scaler.stds[i])) {
      fail("scaler entry " + std::to_string(i) + " is invalid");
    }
  }
  if (model.n_features() != k) {
    fail("model expects " + std::to_string(model.n_features()) + " inputs, selection keeps " +
         std::to_string(k));
  }
}

void write_model(std::ostream& out, const ModelArtifact& a) {
  a.validate();
  out << kMagic << ' ' << a.format_version << '\n';

  out << "[metadata]\n"
      << "seed=" << a.metadata.seed << '\n'
      << "created_unix=" << a.metadata.created_unix << '\n'
      << "dataset_fingerprint=" << a.metadata.dataset_fingerprint << '\n'
      << "n_train=" << a.metadata.n_train << '\n'
      << "train_fraction=" << format_double(a.metadata.train_fraction) << '\n'
      << "leak_free=" << (a.metadata.leak_free ? 1 : 0) << '\n';

  out << "[schema]\n"
      << "label_column=" << a.schema.label_column << '\n'
      << "benign_value=" << a.schema.benign_value << '\n'
      << "delimiter=" << static_cast<int>(static_cast<unsigned char>(a.schema.delimiter)) << '\n';
  write_list(out, "exclude_columns", a.schema.exclude_columns);
  write_list(out, "categorical_columns", a.schema.categorical_columns);

  out << "[layout]\n";
  write_list(out, "raw_columns", a.layout.raw_columns);
  out << "vocabulary=" << a.layout.vocabulary.size() << '\n';
  for (const auto& [column, values] : a.layout.vocabulary) {
    out << "column=" << column << '\n';
    write_list(out, "values", values);
  }

  out << "[selection]\n"
      << "threshold=" << format_double(a.selection.threshold) << '\n';
  write_doubles(out, "correlations", a.selection.correlations);
  write_list(out, "kept", indices_to_strings(a.selection.kept_indices));

  out << "[scaler]\n";
  write_doubles(out, "means", a.scaler.means);
  write_doubles(out, "stds", a.scaler.stds);

  const ElmParams& p = a.model.params();
  out << "[elm]\n"
      << "activation=" << activation_name(p.activation) << '\n'
      << "hidden_nodes=" << p.hidden_nodes << '\n'
      << "seed=" << p.seed << '\n'
      << "rbf_gamma=" << format_double(p.rbf_gamma) << '\n';
  write_matrix(out, "input_weights", a.model.input_weights());
  write_matrix(out, "biases", a.model.biases());
  write_matrix(out, "output_weights", a.model.output_weights());
  out << "end\n";
}

std::string model_to_string(const ModelArtifact& artifact) {
  std::ostringstream out;
  write_model(out, artifact);
  return out.str();
}

void save_model(const ModelArtifact& artifact, const std::string& path) {
  write_file_atomically(path, model_to_string(artifact));
}

ModelArtifact read_model(std::istream& in) {
  Cursor cur(in);
  const std::string magic = cur.line();
  const auto parts = split_view(magic, ' ');
  if (parts.size() != 2 || parts[0] != kMagic) cur.fail("not an elmddos model file");
  if (parts[1] != std::to_string(kModelFormatVersion)) {
    throw UnsupportedVersionError("model file: unsupported format version '" +
                                  std::string(parts[1]) + "' (this build reads version " +
                                  std::to_string(kModelFormatVersion) + ")");
  }

  TrainingMetadata meta;
  cur.expect_line("[metadata]");
  meta.seed = cur.count("seed");
  {
    const std::string s = cur.value("created_unix");
    try {
      std::size_t used = 0;
      meta.created_unix = std::stoll(s, &used);
      if (used != s.size()) cur.fail("bad created_unix");
    } catch (const std::logic_error&) {
      cur.fail("bad created_unix");
    }
  }
  meta.dataset_fingerprint = cur.value("dataset_fingerprint");
  meta.n_train = cur.count("n_train");
  meta.train_fraction = cur.number("train_fraction");
  meta.leak_free = cur.count("leak_free") != 0;

  CsvSchema schema;
  cur.expect_line("[schema]");
  schema.label_column = cur.value("label_column");
  schema.benign_value = cur.value("benign_value");
  const std::uint64_t delim = cur.count("delimiter");
  if (delim == 0 || delim > 127) cur.fail("bad delimiter code");
  schema.delimiter = static_cast<char>(delim);
  schema.exclude_columns = cur.list("exclude_columns");
  schema.categorical_columns = cur.list("categorical_columns");

  FeatureLayout layout;
  cur.expect_line("[layout]");
  layout.raw_columns = cur.list("raw_columns");
  const std::uint64_t n_vocab = cur.count("vocabulary");
  for (std::uint64_t i = 0; i < n_vocab; ++i) {
    std::string column = cur.value("column");
    layout.vocabulary[std::move(column)] = cur.list("values");
  }

  FeatureSelection selection;
  cur.expect_line("[selection]");
  selection.threshold = cur.number("threshold");
  selection.correlations = cur.doubles("correlations");
  for (const auto& s : cur.list("kept")) {
    std::size_t used = 0;
    try {
      selection.kept_indices.push_back(std::stoull(s, &used));
    } catch (const std::logic_error&) {
      cur.fail("bad kept index");
    }
    if (used != s.size()) cur.fail("bad kept index");
  }

  ScalerState scaler;
  cur.expect_line("[scaler]");
  scaler.means = cur.doubles("means");
  scaler.stds = cur.doubles("stds");

  cur.expect_line("[elm]");
  ElmParams params;
  const auto act = parse_activation(cur.value("activation"));
  if (!act) cur.fail("unknown activation");
  params.activation = *act;
  params.hidden_nodes = cur.count("hidden_nodes");
  params.seed = cur.count("seed");
  params.rbf_gamma = cur.number("rbf_gamma");
  Matrix w = cur.matrix("input_weights");
  Matrix b = cur.matrix("biases");
  Matrix beta = cur.matrix("output_weights");
  cur.expect_line("end");

  try {
    ModelArtifact artifact{kModelFormatVersion,
                           std::move(schema),
                           std::move(layout),
                           std::move(selection),
                           std::move(scaler),
                           ElmModel(std::move(w), std::move(b), std::move(beta), params),
                           std::move(meta)};
    artifact.validate();
    return artifact;
  } catch (const IntegrityError&) {
    throw;
  } catch (const Error& e) {
    throw IntegrityError(std::string("model file: ") + e.what());
  }
}

ModelArtifact load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file '" + path + "'");
  try {
    return read_model(in);
  } catch (const IntegrityError& e) {
    throw IntegrityError(path + ": " + e.what());
  }
}

}  // namespace elmddos
