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

#include "elmddos/model_select.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <cmath>
#include <limits>
#include <thread>

#include "elmddos/errors.h"
#include "elmddos/metrics.h"
#include "elmddos/random.h"

namespace elmddos {

std::string_view metric_name(SelectionMetric m) {
  return m == SelectionMetric::kF1 ? "f1" : "accuracy";
}

std::optional<SelectionMetric> parse_metric(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "f1") return SelectionMetric::kF1;
  if (lower == "accuracy") return SelectionMetric::kAccuracy;
  return std::nullopt;
}

std::vector<Fold> kfold_indices(std::span<const Label> labels, std::size_t folds,
                                std::uint64_t seed) {
  if (folds < 2) throw ValidationError("kfold: need at least 2 folds");
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i] ? 1 : 0].push_back(i);
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < folds) {
      throw StratificationError("kfold: class " + std::to_string(c) + " has " +
                                std::to_string(by_class[c].size()) + " samples, fewer than " +
                                std::to_string(folds) + " folds");
    }
  }

  Rng rng(seed);
  std::vector<Fold> out(folds);
  std::size_t position = 0;
  for (auto& pool : by_class) {
    rng.shuffle(std::span<std::size_t>(pool));
    for (std::size_t idx : pool) out[position++ % folds].valid.push_back(idx);
  }
  for (auto& fold : out) std::sort(fold.valid.begin(), fold.valid.end());

  for (std::size_t k = 0; k < folds; ++k) {
    std::vector<bool> in_valid(labels.size(), false);
    for (std::size_t idx : out[k].valid) in_valid[idx] = true;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!in_valid[i]) out[k].train.push_back(i);
    }
  }
  return out;
}

std::uint64_t fold_seed(std::uint64_t base_seed, std::size_t fold, const ElmParams& params) {
  return derive_seed(base_seed, {static_cast<std::uint64_t>(fold),
                                 static_cast<std::uint64_t>(params.hidden_nodes),
                                 static_cast<std::uint64_t>(params.activation),
                                 std::bit_cast<std::uint64_t>(params.rbf_gamma)});
}

std::vector<FoldOutcome> cross_validate_detailed(const FlowDataset& data, const ElmParams& params,
                                                 std::size_t folds, std::uint64_t seed,
                                                 SelectionMetric metric,
                                                 const CvOptions& options) {
  params.validate();
  const std::vector<Fold> split = kfold_indices(data.labels(), folds, seed);
  std::vector<FoldOutcome> out;
  out.reserve(folds);
  for (std::size_t k = 0; k < split.size(); ++k) {
    FlowDataset train = data.subset(split[k].train);
    FlowDataset valid = data.subset(split[k].valid);

    FoldOutcome fo;
    if (options.leak_free) {
      fo.kept_features = select_features(train, options.corr_threshold).kept_indices;
      train = train.with_columns(fo.kept_features);
      valid = valid.with_columns(fo.kept_features);
    } else {
      fo.kept_features.resize(data.cols());
      for (std::size_t c = 0; c < data.cols(); ++c) fo.kept_features[c] = c;
    }

    fo.scaler = fit_scaler(train.features(), train.feature_names());
    const Matrix x_train = apply_scaler(fo.scaler, train.features());
    const Matrix x_valid = apply_scaler(fo.scaler, valid.features());

    ElmParams fold_params = params;
    fold_params.seed = fold_seed(seed, k, params);
    const ElmModel model = fit(x_train, train.labels(), fold_params);
    const Labels predicted = predict(model, x_valid, options.decision_threshold);
    const ConfusionMatrix cm = confusion(valid.labels(), predicted);
    fo.metric = metric == SelectionMetric::kF1 ? prf1(cm).f1 : accuracy(cm);
    out.push_back(std::move(fo));
  }
  return out;
}

std::vector<double> cross_validate(const FlowDataset& data, const ElmParams& params,
                                   std::size_t folds, std::uint64_t seed, SelectionMetric metric,
                                   const CvOptions& options) {
  std::vector<double> metrics;
  for (const auto& fo : cross_validate_detailed(data, params, folds, seed, metric, options)) {
    metrics.push_back(fo.metric);
  }
  return metrics;
}

void GridSpec::validate() const {
  if (hidden_nodes.empty() || activations.empty() || rbf_gammas.empty()) {
    throw ValidationError("grid: candidate lists must be non-empty");
  }
  if (folds < 2) throw ValidationError("grid: folds must be >= 2");
  for (std::size_t h : hidden_nodes) {
    if (h < 1) throw ValidationError("grid: hidden node counts must be >= 1");
  }
  for (double g : rbf_gammas) {
    if (!(g > 0.0) || !std::isfinite(g)) throw ValidationError("grid: rbf gammas must be > 0");
  }
}

std::vector<ElmParams> GridSpec::configurations() const {
  std::vector<ElmParams> out;
  for (std::size_t h : hidden_nodes) {
    for (Activation a : activations) {
      if (a == Activation::kRbf) {
        for (double g : rbf_gammas) out.push_back({h, a, seed, g});
      } else {
        out.push_back({h, a, seed, 1.0});
      }
    }
  }
  return out;
}

bool ranks_before(const GridEntry& a, const GridEntry& b) {
  if (a.mean != b.mean) return a.mean > b.mean;
  if (a.params.hidden_nodes != b.params.hidden_nodes) {
    return a.params.hidden_nodes < b.params.hidden_nodes;
  }
  if (a.params.activation != b.params.activation) return a.params.activation < b.params.activation;
  return a.params.rbf_gamma < b.params.rbf_gamma;
}

namespace {

GridEntry evaluate_configuration(const FlowDataset& data, const GridSpec& spec,
                                 const CvOptions& options, const ElmParams& params) {
  GridEntry e;
  e.params = params;
  try {
    e.fold_metrics = cross_validate(data, params, spec.folds, spec.seed, spec.metric, options);
    double sum = 0.0;
    for (double m : e.fold_metrics) sum += m;
    e.mean = sum / static_cast<double>(e.fold_metrics.size());
    double ss = 0.0;
    for (double m : e.fold_metrics) ss += (m - e.mean) * (m - e.mean);
    e.stddev = std::sqrt(ss / static_cast<double>(e.fold_metrics.size()));
  } catch (const std::exception& ex) {
    e.failed = true;
    e.error = ex.what();
    e.fold_metrics.clear();
    e.mean = -std::numeric_limits<double>::infinity();
    e.stddev = 0.0;
  }
  return e;
}

}  // namespace

GridResult grid_search(const FlowDataset& data, const GridSpec& spec, const CvOptions& options,
                       unsigned threads) {
  spec.validate();
  const std::vector<ElmParams> configs = spec.configurations();
  std::vector<GridEntry> entries(configs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      entries[i] = evaluate_configuration(data, spec, options, configs[i]);
    }
  };
  const unsigned n_workers =
      std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  }

  std::sort(entries.begin(), entries.end(), ranks_before);
  GridResult result;
  result.best = entries.front().params;
  result.leaderboard = std::move(entries);
  return result;
}

}  // namespace elmddos
