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

#ifndef ELMDDOS_METRICS_H_
#define ELMDDOS_METRICS_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "elmddos/dataset.h"
#include "elmddos/elm.h"

namespace elmddos {

// Positive class is attack (label 1).
struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion(std::span<const Label> y_true, std::span<const Label> y_pred);

// Ratios with a zero denominator are reported as 0.0 and set
// `zero_division`.
struct PrecisionRecallF1 {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool zero_division = false;
};

PrecisionRecallF1 prf1(const ConfusionMatrix& cm);
// Same quantities with benign (label 0) treated as the positive class.
PrecisionRecallF1 prf1_negative(const ConfusionMatrix& cm);

// Throws ValidationError on an empty matrix.
double accuracy(const ConfusionMatrix& cm);

// Mann-Whitney statistic: P(score of random positive > random negative),
// ties counted one half. Throws ValidationError if either class is absent.
double auc_roc(std::span<const Label> y_true, std::span<const double> scores);

struct EvalReport {
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double auc_roc = 0.0;
  double benign_precision = 0.0;
  double benign_recall = 0.0;
  double threshold = kDefaultThreshold;
  std::uint64_t n_samples = 0;
  bool zero_division = false;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Fills an EvalReport from labels, raw scores and the threshold that turned
// scores into predictions.
EvalReport make_report(std::span<const Label> y_true, std::span<const double> scores,
                       double threshold);
EvalReport evaluate(const ElmModel& model, const FlowDataset& test,
                    double threshold = kDefaultThreshold);

// Key=value text form; doubles use 17 significant digits so parsing returns
// bit-identical values. See docs/formats.md.
void write_report(std::ostream& out, const EvalReport& report);
EvalReport parse_report(std::istream& in);

// Human-oriented summary in two-decimal form with the 2x2 confusion block.
void print_summary(std::ostream& out, const EvalReport& report);

}  // namespace elmddos

#endif  // ELMDDOS_METRICS_H_
