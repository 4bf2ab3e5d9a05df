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

#include "elmddos/pipeline.h"

#include <cstdlib>
#include <string>

#include "elmddos/csv.h"
#include "elmddos/elm.h"

namespace elmddos {

PreparedSplit prepare_split(const FlowDataset& cleaned, const PipelineConfig& config) {
  SplitIndices indices =
      split_indices(cleaned.labels(), config.train_fraction, config.seed, config.split_mode);
  FlowDataset train = cleaned.subset(indices.train);
  FlowDataset test = cleaned.subset(indices.test);

  FeatureSelection selection =
      select_features(config.leak_free ? train : cleaned, config.corr_threshold);
  return {train.with_columns(selection.kept_indices), test.with_columns(selection.kept_indices),
          std::move(selection), std::move(indices)};
}

TrainedPipeline train_pipeline(const PreparedSplit& prepared, const ElmParams& params,
                               const PipelineConfig& config, const CsvSchema& schema,
                               const FeatureLayout& layout, double threshold) {
  ScalerState scaler = fit_scaler(prepared.train.features(), prepared.train.feature_names());
  const Matrix x_train = apply_scaler(scaler, prepared.train.features());
  const Matrix x_test = apply_scaler(scaler, prepared.test.features());
  ElmModel model = fit(x_train, prepared.train.labels(), params);

  const std::vector<double> scores = score(model, x_test);
  EvalReport report = make_report(prepared.test.labels(), scores, threshold);

  TrainingMetadata meta;
  meta.seed = config.seed;
  meta.created_unix = reproducible_timestamp();
  meta.dataset_fingerprint = dataset_fingerprint(prepared.train);
  meta.n_train = prepared.train.rows();
  meta.train_fraction = config.train_fraction;
  meta.leak_free = config.leak_free;

  ModelArtifact artifact{kModelFormatVersion, schema,          layout, prepared.selection,
                         std::move(scaler),   std::move(model), meta};
  artifact.validate();
  return {std::move(artifact), report};
}

Matrix transform_features(const ModelArtifact& artifact, const Matrix& expanded) {
  return apply_scaler(artifact.scaler, expanded.select_cols(artifact.selection.kept_indices));
}

std::vector<double> score_expanded(const ModelArtifact& artifact, const Matrix& expanded) {
  return score(artifact.model, transform_features(artifact, expanded));
}

std::int64_t reproducible_timestamp() {
  const char* env = std::getenv("SOURCE_DATE_EPOCH");
  if (env == nullptr) return 0;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(env, &used);
    return used == std::string(env).size() ? v : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace elmddos
