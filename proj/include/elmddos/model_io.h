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

#ifndef ELMDDOS_MODEL_IO_H_
#define ELMDDOS_MODEL_IO_H_

// Self-describing text serialization of a trained pipeline. The layout is
// documented field by field in docs/formats.md.

#include <cstdint>
#include <iosfwd>
#include <string>

#include "elmddos/csv.h"
#include "elmddos/elm.h"
#include "elmddos/preprocess.h"

namespace elmddos {

inline constexpr int kModelFormatVersion = 1;

struct TrainingMetadata {
  std::uint64_t seed = 0;
  // Seconds since the epoch; taken from SOURCE_DATE_EPOCH when set, else 0,
  // so identical runs produce identical files.
  std::int64_t created_unix = 0;
  std::string dataset_fingerprint;
  std::uint64_t n_train = 0;
  double train_fraction = kDefaultTrainFraction;
  bool leak_free = false;

  friend bool operator==(const TrainingMetadata&, const TrainingMetadata&) = default;
};

struct ModelArtifact {
  int format_version = kModelFormatVersion;
  CsvSchema schema;
  FeatureLayout layout;
  FeatureSelection selection;
  ScalerState scaler;
  ElmModel model;
  TrainingMetadata metadata;

  // Throws IntegrityError if dimensions disagree anywhere.
  void validate() const;
};

void write_model(std::ostream& out, const ModelArtifact& artifact);
std::string model_to_string(const ModelArtifact& artifact);
// Atomic: the file either keeps its old content or holds the full artifact.
void save_model(const ModelArtifact& artifact, const std::string& path);

// Throws UnsupportedVersionError or IntegrityError; never returns a
// partially read artifact.
ModelArtifact read_model(std::istream& in);
ModelArtifact load_model(const std::string& path);

}  // namespace elmddos

#endif  // ELMDDOS_MODEL_IO_H_
