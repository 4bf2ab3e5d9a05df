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

#include "elmddos/metrics.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "elmddos/errors.h"

namespace elmddos {
namespace {

double ratio(std::uint64_t num, std::uint64_t den, bool& zero_division) {
  if (den == 0) {
    zero_division = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

PrecisionRecallF1 prf1_from(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  PrecisionRecallF1 out;
  out.precision = ratio(tp, tp + fp, out.zero_division);
  out.recall = ratio(tp, tp + fn, out.zero_division);
  const double sum = out.precision + out.recall;
  if (sum == 0.0) {
    out.zero_division = true;
    out.f1 = 0.0;
  } else {
    out.f1 = 2.0 * out.precision * out.recall / sum;
  }
  return out;
}

}  // namespace

ConfusionMatrix confusion(std::span<const Label> y_true, std::span<const Label> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw ShapeError("confusion: " + std::to_string(y_true.size()) + " true labels vs " +
                     std::to_string(y_pred.size()) + " predictions");
  }
  if (y_true.empty()) throw ValidationError("confusion: no samples");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const bool t = y_true[i] != 0;
    const bool p = y_pred[i] != 0;
    if (t && p) {
      ++cm.tp;
    } else if (!t && p) {
      ++cm.fp;
    } else if (!t) {
      ++cm.tn;
    } else {
      ++cm.fn;
    }
  }
  return cm;
}

PrecisionRecallF1 prf1(const ConfusionMatrix& cm) { return prf1_from(cm.tp, cm.fp, cm.fn); }

PrecisionRecallF1 prf1_negative(const ConfusionMatrix& cm) {
  return prf1_from(cm.tn, cm.fn, cm.fp);
}

double accuracy(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw ValidationError("accuracy: empty confusion matrix");
  return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
}

double auc_roc(std::span<const Label> y_true, std::span<const double> scores) {
  if (y_true.size() != scores.size()) {
    throw ShapeError("auc_roc: " + std::to_string(y_true.size()) + " labels vs " +
                     std::to_string(scores.size()) + " scores");
  }
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of 1-based mid-ranks of the positives; ranks are half-integers, so
  // twice the sum is an exact integer.
  std::uint64_t twice_rank_sum = 0;
  std::uint64_t positives = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const std::uint64_t twice_mid = static_cast<std::uint64_t>(i + 1 + j);  // (i+1)+(j)
    for (std::size_t k = i; k < j; ++k) {
      if (y_true[order[k]] != 0) {
        twice_rank_sum += twice_mid;
        ++positives;
      }
    }
    i = j;
  }
  const std::uint64_t negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    throw ValidationError("auc_roc: both classes must be present");
  }
  // U = rank_sum - P(P+1)/2; doubled to stay integral.
  const std::uint64_t twice_u = twice_rank_sum - positives * (positives + 1);
  return static_cast<double>(twice_u) /
         (2.0 * static_cast<double>(positives) * static_cast<double>(negatives));
}

EvalReport make_report(std::span<const Label> y_true, std::span<const double> scores,
                       double threshold) {
  const Labels predicted = threshold_scores(scores, threshold);
  EvalReport r;
  r.confusion = confusion(y_true, predicted);
  r.accuracy = accuracy(r.confusion);
  const PrecisionRecallF1 pos = prf1(r.confusion);
  const PrecisionRecallF1 neg = prf1_negative(r.confusion);
  r.precision = pos.precision;
  r.recall = pos.recall;
  r.f1 = pos.f1;
  r.benign_precision = neg.precision;
  r.benign_recall = neg.recall;
  r.zero_division = pos.zero_division || neg.zero_division;
  r.auc_roc = auc_roc(y_true, scores);
  r.threshold = threshold;
  r.n_samples = r.confusion.total();
  return r;
}

EvalReport evaluate(const ElmModel& model, const FlowDataset& test, double threshold) {
  if (test.rows() == 0) throw ValidationError("evaluate: test set is empty");
  const std::vector<double> scores = score(model, test.features());
  return make_report(test.labels(), scores, threshold);
}

}  // namespace elmddos
