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

#ifndef ELMDDOS_ELM_H_
#define ELMDDOS_ELM_H_

// Extreme Learning Machine with a single hidden layer and one output.
//
// Hidden weights are drawn once from a seeded stream and never trained; the
// output weights are the minimum-norm least-squares solution of H beta = T.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "elmddos/matrix.h"

namespace elmddos {

using Label = std::uint8_t;
using Labels = std::vector<Label>;

// Declaration order is also the grid-search tie-break order.
enum class Activation { kTanh = 0, kSigmoid = 1, kRbf = 2 };

std::string_view activation_name(Activation a);
// Accepts "tanh", "sigmoid", "rbf" (case-insensitive).
std::optional<Activation> parse_activation(std::string_view name);

struct ElmParams {
  std::size_t hidden_nodes = 64;
  Activation activation = Activation::kTanh;
  std::uint64_t seed = 42;
  double rbf_gamma = 1.0;  // Gaussian width, Rbf only

  void validate() const;
  friend bool operator==(const ElmParams&, const ElmParams&) = default;
};

struct HiddenWeights {
  Matrix input_weights;  // n x L
  Matrix biases;         // 1 x L
};

// Weights and biases i.i.d. uniform on [-1, 1) from Rng(params.seed); W is
// filled row-major first, then b.
HiddenWeights init_random(const ElmParams& params, std::size_t n_features);

// Tanh/Sigmoid: g(X W + b). Rbf: exp(-gamma * ||x_i - w_j||^2) with column j
// of W as the centre; b is ignored.
Matrix hidden_layer(const Matrix& x, const Matrix& w, const Matrix& b, Activation activation,
                    double rbf_gamma);

class ElmModel {
 public:
  // Validates shapes and finiteness; throws ShapeError / ValidationError.
  ElmModel(Matrix input_weights, Matrix biases, Matrix output_weights, ElmParams params);

  const Matrix& input_weights() const { return input_weights_; }
  const Matrix& biases() const { return biases_; }
  const Matrix& output_weights() const { return output_weights_; }
  const ElmParams& params() const { return params_; }
  std::size_t n_features() const { return input_weights_.rows(); }

 private:
  Matrix input_weights_;
  Matrix biases_;
  Matrix output_weights_;
  ElmParams params_;
};

ElmModel fit(const Matrix& x_train, std::span<const Label> y_train, const ElmParams& params);

// Raw H beta per row, unclipped.
std::vector<double> score(const ElmModel& model, const Matrix& x);

inline constexpr double kDefaultThreshold = 0.5;

// 1 iff score >= threshold.
Labels threshold_scores(std::span<const double> scores, double threshold);
Labels predict(const ElmModel& model, const Matrix& x, double threshold = kDefaultThreshold);

}  // namespace elmddos

#endif  // ELMDDOS_ELM_H_
