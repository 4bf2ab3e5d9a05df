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

#ifndef ELMDDOS_PREPROCESS_H_
#define ELMDDOS_PREPROCESS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elmddos/dataset.h"
#include "elmddos/matrix.h"

namespace elmddos {

inline constexpr double kDefaultCorrelationThreshold = 0.02;
inline constexpr double kDefaultTrainFraction = 0.8;

struct CleanStats {
  std::size_t dropped_missing = 0;
  std::size_t dropped_duplicates = 0;
};

// Drops rows with any non-finite cell, then collapses exact duplicates
// (bitwise-equal features and equal label) to their first occurrence.
// Throws ValidationError if nothing survives.
FlowDataset clean(const RawFlowTable& raw, CleanStats* stats = nullptr);

// "benign" (case-insensitive, surrounding whitespace ignored) -> 0, any
// other non-empty category -> 1.
Label binarize_label(std::string_view category, std::string_view benign_value = "Benign");
Labels binarize_labels(std::span<const std::string> categories,
                       std::string_view benign_value = "Benign");

struct FeatureSelection {
  std::vector<std::size_t> kept_indices;  // ascending
  std::vector<double> correlations;       // one per original column
  double threshold = kDefaultCorrelationThreshold;
};

// Pearson (point-biserial) correlation of every column with the 0/1 label.
// Constant columns score 0. Keeps |r| >= threshold.
FeatureSelection select_features(const FlowDataset& data,
                                 double threshold = kDefaultCorrelationThreshold);

struct ScalerState {
  std::vector<double> means;
  std::vector<double> stds;  // population (1/N), all > 0
};

ScalerState fit_scaler(const Matrix& train_features,
                       std::span<const std::string> column_names = {});
Matrix apply_scaler(const ScalerState& state, const Matrix& features);

enum class SplitMode { kStratified, kRandom };

struct SplitIndices {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

struct SplitResult {
  FlowDataset train;
  FlowDataset test;
  SplitIndices indices;
};

// Stratified: each class is shuffled with one Rng(seed) stream (class 0
// first) and its first round_half_up(count * fraction) rows, clamped to
// [1, count - 1], go to train. Random: the same rule over all rows.
SplitIndices split_indices(std::span<const Label> labels, double train_fraction,
                           std::uint64_t seed, SplitMode mode = SplitMode::kStratified);
SplitResult split(const FlowDataset& data, double train_fraction, std::uint64_t seed,
                  SplitMode mode = SplitMode::kStratified);

}  // namespace elmddos

#endif  // ELMDDOS_PREPROCESS_H_
