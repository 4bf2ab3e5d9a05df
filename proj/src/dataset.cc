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

#include "elmddos/dataset.h"

#include <algorithm>
#include <set>

#include "elmddos/errors.h"

namespace elmddos {

FlowDataset::FlowDataset(Matrix features, Labels labels, std::vector<std::string> feature_names,
                         std::string source, std::vector<std::string> categories)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      feature_names_(std::move(feature_names)),
      source_(std::move(source)),
      categories_(std::move(categories)) {
  if (labels_.size() != features_.rows()) {
    throw ShapeError("FlowDataset: " + std::to_string(features_.rows()) + " rows but " +
                     std::to_string(labels_.size()) + " labels");
  }
  if (feature_names_.size() != features_.cols()) {
    throw ShapeError("FlowDataset: " + std::to_string(features_.cols()) + " columns but " +
                     std::to_string(feature_names_.size()) + " feature names");
  }
  if (!categories_.empty() && categories_.size() != labels_.size()) {
    throw ShapeError("FlowDataset: category tags do not cover every row");
  }
  std::set<std::string> seen;
  for (const auto& name : feature_names_) {
    if (!seen.insert(name).second) throw ValidationError("duplicate feature name '" + name + "'");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] > 1) {
      throw ValidationError("FlowDataset: label in row " + std::to_string(i) + " is not 0/1");
    }
  }
}

std::size_t FlowDataset::count(Label label) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

FlowDataset FlowDataset::subset(std::span<const std::size_t> row_indices) const {
  Labels labels;
  labels.reserve(row_indices.size());
  std::vector<std::string> cats;
  for (std::size_t i : row_indices) {
    labels.push_back(labels_.at(i));
    if (!categories_.empty()) cats.push_back(categories_[i]);
  }
  return FlowDataset(features_.select_rows(row_indices), std::move(labels), feature_names_,
                     source_, std::move(cats));
}

FlowDataset FlowDataset::with_columns(std::span<const std::size_t> col_indices) const {
  std::vector<std::string> names;
  names.reserve(col_indices.size());
  for (std::size_t c : col_indices) names.push_back(feature_names_.at(c));
  return FlowDataset(features_.select_cols(col_indices), labels_, std::move(names), source_,
                     categories_);
}

FlowDataset FlowDataset::with_features(Matrix features) const {
  return FlowDataset(std::move(features), labels_, feature_names_, source_, categories_);
}

}  // namespace elmddos
