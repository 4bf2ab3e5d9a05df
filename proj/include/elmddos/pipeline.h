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

#ifndef ELMDDOS_PIPELINE_H_
#define ELMDDOS_PIPELINE_H_

// End-to-end training flow:
//   clean -> split -> select features -> fit scaler on train -> scale both
//   -> fit ELM -> evaluate on test.
//
// The split is computed before selection only so that single-class data is
// rejected by the split; selection still sees the full cleaned data unless
// leak_free is set, in which case it sees the training part only.

#include <cstdint>
#include <vector>

#include "elmddos/dataset.h"
#include "elmddos/metrics.h"
#include "elmddos/model_io.h"
#include "elmddos/preprocess.h"

namespace elmddos {

struct PipelineConfig {
  double corr_threshold = kDefaultCorrelationThreshold;
  double train_fraction = kDefaultTrainFraction;
  std::uint64_t seed = 42;
  bool leak_free = false;
  SplitMode split_mode = SplitMode::kStratified;
};

// Both splits restricted to the selected columns, not yet scaled.
struct PreparedSplit {
  FlowDataset train;
  FlowDataset test;
  FeatureSelection selection;
  SplitIndices indices;
};

PreparedSplit prepare_split(const FlowDataset& cleaned, const PipelineConfig& config);

struct TrainedPipeline {
  ModelArtifact artifact;
  EvalReport report;
};

// Fits scaler and ELM on prepared.train, evaluates on prepared.test.
TrainedPipeline train_pipeline(const PreparedSplit& prepared, const ElmParams& params,
                               const PipelineConfig& config, const CsvSchema& schema,
                               const FeatureLayout& layout, double threshold);

// Selected, scaled model inputs from fully expanded feature rows.
Matrix transform_features(const ModelArtifact& artifact, const Matrix& expanded);
std::vector<double> score_expanded(const ModelArtifact& artifact, const Matrix& expanded);

// SOURCE_DATE_EPOCH when set and numeric, else 0.
std::int64_t reproducible_timestamp();

}  // namespace elmddos

#endif  // ELMDDOS_PIPELINE_H_
