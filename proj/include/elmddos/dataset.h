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

#ifndef ELMDDOS_DATASET_H_
#define ELMDDOS_DATASET_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "elmddos/elm.h"
#include "elmddos/matrix.h"

namespace elmddos {

// Flow records as read from disk, before cleaning. Missing or unparseable
// cells are stored as quiet NaN.
struct RawFlowTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> cells;                // rows x cols, row-major
  Labels labels;                            // 0 benign, 1 attack
  std::vector<std::string> categories;      // raw label text per row
  std::vector<std::string> feature_names;
  std::string source;

  double cell(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }
};

// Clean, fully numeric labelled data.
class FlowDataset {
 public:
  FlowDataset() = default;
  // Validates: labels match rows and are 0/1, names match columns and are
  // unique, categories are empty or one per row.
  FlowDataset(Matrix features, Labels labels, std::vector<std::string> feature_names,
              std::string source = {}, std::vector<std::string> categories = {});

  const Matrix& features() const { return features_; }
  const Labels& labels() const { return labels_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::string& source() const { return source_; }
  // Raw category text per row (e.g. "DDoS-SYN Flood"); may be empty.
  const std::vector<std::string>& categories() const { return categories_; }

  std::size_t rows() const { return features_.rows(); }
  std::size_t cols() const { return features_.cols(); }
  std::size_t count(Label label) const;

  FlowDataset subset(std::span<const std::size_t> row_indices) const;
  FlowDataset with_columns(std::span<const std::size_t> col_indices) const;
  FlowDataset with_features(Matrix features) const;

 private:
  Matrix features_;
  Labels labels_;
  std::vector<std::string> feature_names_;
  std::string source_;
  std::vector<std::string> categories_;
};

}  // namespace elmddos

#endif  // ELMDDOS_DATASET_H_
