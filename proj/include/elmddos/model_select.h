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

#ifndef ELMDDOS_MODEL_SELECT_H_
#define ELMDDOS_MODEL_SELECT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elmddos/dataset.h"
#include "elmddos/elm.h"
#include "elmddos/preprocess.h"

namespace elmddos {

enum class SelectionMetric { kF1, kAccuracy };

std::string_view metric_name(SelectionMetric m);
std::optional<SelectionMetric> parse_metric(std::string_view name);

struct Fold {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> valid;  // ascending
};

// Stratified folds. Class 0 then class 1 are shuffled with one Rng(seed)
// stream and dealt round-robin; the dealing position carries over from one
// class to the next so fold sizes stay within one of each other.
std::vector<Fold> kfold_indices(std::span<const Label> labels, std::size_t folds,
                                std::uint64_t seed);

struct CvOptions {
  // Feature selection inside each fold's training part instead of upstream.
  bool leak_free = false;
  double corr_threshold = kDefaultCorrelationThreshold;
  double decision_threshold = kDefaultThreshold;
};

// Seed of the ELM fitted on `fold`: a hash of the base seed, the fold index
// and the configuration (hidden nodes, activation, gamma bits). params.seed
// is ignored.
std::uint64_t fold_seed(std::uint64_t base_seed, std::size_t fold, const ElmParams& params);

struct FoldOutcome {
  double metric = 0.0;
  ScalerState scaler;                     // fitted on the fold's training rows
  std::vector<std::size_t> kept_features;  // all columns unless leak_free
};

std::vector<FoldOutcome> cross_validate_detailed(const FlowDataset& data, const ElmParams& params,
                                                 std::size_t folds, std::uint64_t seed,
                                                 SelectionMetric metric,
                                                 const CvOptions& options = {});

std::vector<double> cross_validate(const FlowDataset& data, const ElmParams& params,
                                   std::size_t folds, std::uint64_t seed, SelectionMetric metric,
                                   const CvOptions& options = {});

struct GridSpec {
  std::vector<std::size_t> hidden_nodes{16, 32, 64, 128, 256, 512, 1024};
  std::vector<Activation> activations{Activation::kTanh, Activation::kSigmoid, Activation::kRbf};
  std::vector<double> rbf_gammas{1.0};  // crossed with Rbf only
  std::size_t folds = 5;
  std::uint64_t seed = 42;
  SelectionMetric metric = SelectionMetric::kF1;

  void validate() const;
  // Cross product in (hidden, activation, gamma) order; every entry carries
  // seed = this->seed.
  std::vector<ElmParams> configurations() const;
};

struct GridEntry {
  ElmParams params;
  std::vector<double> fold_metrics;
  double mean = 0.0;    // -inf when failed
  double stddev = 0.0;  // population
  bool failed = false;
  std::string error;
};

// Leaderboard order: higher mean first; ties go to fewer hidden nodes, then
// Tanh < Sigmoid < Rbf, then smaller gamma.
bool ranks_before(const GridEntry& a, const GridEntry& b);

struct GridResult {
  std::vector<GridEntry> leaderboard;
  ElmParams best;
};

// A configuration that throws is recorded as failed and does not stop the
// sweep. `threads` > 1 evaluates configurations concurrently; the result
// does not depend on it.
GridResult grid_search(const FlowDataset& data, const GridSpec& spec,
                       const CvOptions& options = {}, unsigned threads = 1);

}  // namespace elmddos

#endif  // ELMDDOS_MODEL_SELECT_H_
