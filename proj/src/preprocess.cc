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

#include "elmddos/preprocess.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <unordered_map>

#include "elmddos/errors.h"
#include "elmddos/random.h"
#include "elmddos/text.h"

namespace elmddos {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

std::uint64_t hash_row(std::span<const double> row, Label label) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto feed = [&h](const void* p, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 0x100000001B3ULL;
    }
  };
  feed(row.data(), row.size_bytes());
  feed(&label, sizeof label);
  return h;
}

std::size_t round_half_up(double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); }

bool is_constant(const Matrix& m, std::size_t col) {
  for (std::size_t i = 1; i < m.rows(); ++i) {
    if (m(i, col) != m(0, col)) return false;
  }
  return true;
}

}  // namespace

FlowDataset clean(const RawFlowTable& raw, CleanStats* stats) {
  CleanStats local;
  std::vector<std::size_t> keep;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
  for (std::size_t r = 0; r < raw.rows; ++r) {
    const std::span<const double> row(raw.cells.data() + r * raw.cols, raw.cols);
    if (!std::all_of(row.begin(), row.end(), [](double v) { return std::isfinite(v); })) {
      ++local.dropped_missing;
      continue;
    }
    auto& bucket = seen[hash_row(row, raw.labels[r])];
    const bool duplicate = std::any_of(bucket.begin(), bucket.end(), [&](std::size_t other) {
      return raw.labels[other] == raw.labels[r] &&
             std::memcmp(raw.cells.data() + other * raw.cols, row.data(), row.size_bytes()) == 0;
    });
    if (duplicate) {
      ++local.dropped_duplicates;
      continue;
    }
    bucket.push_back(r);
    keep.push_back(r);
  }
  if (keep.empty()) {
    throw ValidationError("clean: no rows left after dropping missing values and duplicates (" +
                          std::to_string(raw.rows) + " input rows)");
  }

  Matrix features = Matrix::zeros(keep.size(), raw.cols);
  Labels labels;
  std::vector<std::string> categories;
  labels.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    std::copy_n(raw.cells.data() + keep[i] * raw.cols, raw.cols, features.row(i).begin());
    labels.push_back(raw.labels[keep[i]]);
    if (!raw.categories.empty()) categories.push_back(raw.categories[keep[i]]);
  }
  if (stats != nullptr) *stats = local;
  return FlowDataset(std::move(features), std::move(labels), raw.feature_names, raw.source,
                     std::move(categories));
}

Label binarize_label(std::string_view category, std::string_view benign_value) {
  const std::string_view c = trim(category);
  if (c.empty()) throw ValidationError("empty category label");
  return iequals(c, trim(benign_value)) ? 0 : 1;
}

Labels binarize_labels(std::span<const std::string> categories, std::string_view benign_value) {
  Labels out(categories.size());
  for (std::size_t i = 0; i < categories.size(); ++i) {
    if (trim(categories[i]).empty()) {
      throw ValidationError("empty category label in row " + std::to_string(i));
    }
    out[i] = binarize_label(categories[i], benign_value);
  }
  return out;
}

FeatureSelection select_features(const FlowDataset& data, double threshold) {
  if (!(threshold >= 0.0)) throw ValidationError("select_features: threshold must be >= 0");
  if (data.rows() < 2) throw ValidationError("select_features: need at least 2 rows");

  const Matrix& x = data.features();
  const std::size_t n = x.rows();
  double y_mean = 0.0;
  for (Label l : data.labels()) y_mean += l;
  y_mean /= static_cast<double>(n);
  double syy = 0.0;
  for (Label l : data.labels()) syy += (l - y_mean) * (l - y_mean);

  FeatureSelection sel;
  sel.threshold = threshold;
  sel.correlations.assign(x.cols(), 0.0);
  for (std::size_t c = 0; c < x.cols(); ++c) {
    if (syy == 0.0 || is_constant(x, c)) continue;
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x(i, c);
    mean /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = x(i, c) - mean;
      sxx += dx * dx;
      sxy += dx * (data.labels()[i] - y_mean);
    }
    if (sxx == 0.0) continue;
    sel.correlations[c] = sxy / std::sqrt(sxx * syy);
  }
  for (std::size_t c = 0; c < x.cols(); ++c) {
    if (std::fabs(sel.correlations[c]) >= threshold && sel.correlations[c] != 0.0) {
      sel.kept_indices.push_back(c);
    }
  }
  if (sel.kept_indices.empty()) {
    throw ValidationError("select_features: no feature has |correlation| >= " +
                          std::to_string(threshold) + "; lower the correlation threshold");
  }
  return sel;
}

ScalerState fit_scaler(const Matrix& train_features, std::span<const std::string> column_names) {
  if (train_features.rows() < 2) throw ValidationError("fit_scaler: need at least 2 rows");
  const std::size_t n = train_features.rows();
  ScalerState state;
  state.means.resize(train_features.cols());
  state.stds.resize(train_features.cols());
  for (std::size_t c = 0; c < train_features.cols(); ++c) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += train_features(i, c);
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = train_features(i, c) - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n));
    if (is_constant(train_features, c) || !(sd > 0.0)) {
      std::string name = "column " + std::to_string(c);
      if (c < column_names.size()) name += " (" + column_names[c] + ")";
      throw ValidationError("fit_scaler: " + name + " has zero variance");
    }
    state.means[c] = mean;
    state.stds[c] = sd;
  }
  return state;
}

Matrix apply_scaler(const ScalerState& state, const Matrix& features) {
  if (features.cols() != state.means.size()) {
    throw ShapeError("apply_scaler: scaler fitted on " + std::to_string(state.means.size()) +
                     " columns, got " + std::to_string(features.cols()));
  }
  Matrix out = Matrix::zeros(features.rows(), features.cols());
  for (std::size_t i = 0; i < features.rows(); ++i) {
    const auto in = features.row(i);
    auto dst = out.row(i);
    for (std::size_t j = 0; j < in.size(); ++j) dst[j] = (in[j] - state.means[j]) / state.stds[j];
  }
  return out;
}

SplitIndices split_indices(std::span<const Label> labels, double train_fraction,
                           std::uint64_t seed, SplitMode mode) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ValidationError("split: train fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i] ? 1 : 0].push_back(i);
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < 2) {
      throw StratificationError("split: class " + std::to_string(c) + " has " +
                                std::to_string(by_class[c].size()) +
                                " sample(s); need at least 2 of each class");
    }
  }

  Rng rng(seed);
  SplitIndices out;
  auto deal = [&](std::vector<std::size_t>& pool) {
    rng.shuffle(std::span<std::size_t>(pool));
    const std::size_t n_train =
        std::clamp<std::size_t>(round_half_up(static_cast<double>(pool.size()) * train_fraction), 1,
                                pool.size() - 1);
    out.train.insert(out.train.end(), pool.begin(), pool.begin() + n_train);
    out.test.insert(out.test.end(), pool.begin() + n_train, pool.end());
  };
  if (mode == SplitMode::kStratified) {
    deal(by_class[0]);
    deal(by_class[1]);
  } else {
    std::vector<std::size_t> all(labels.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    deal(all);
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

SplitResult split(const FlowDataset& data, double train_fraction, std::uint64_t seed,
                  SplitMode mode) {
  SplitIndices idx = split_indices(data.labels(), train_fraction, seed, mode);
  FlowDataset train = data.subset(idx.train);
  FlowDataset test = data.subset(idx.test);
  return {std::move(train), std::move(test), std::move(idx)};
}

}  // namespace elmddos
