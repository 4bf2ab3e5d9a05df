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

#include "elmddos/elm.h"

#include <cctype>
#include <cmath>
#include <string>

#include "elmddos/errors.h"
#include "elmddos/linalg.h"
#include "elmddos/random.h"

namespace elmddos {

std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::kTanh:
      return "tanh";
    case Activation::kSigmoid:
      return "sigmoid";
    case Activation::kRbf:
      return "rbf";
  }
  return "unknown";
}

std::optional<Activation> parse_activation(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "tanh") return Activation::kTanh;
  if (lower == "sigmoid") return Activation::kSigmoid;
  if (lower == "rbf") return Activation::kRbf;
  return std::nullopt;
}

void ElmParams::validate() const {
  if (hidden_nodes < 1) throw ValidationError("hidden_nodes must be >= 1");
  if (!(rbf_gamma > 0.0) || !std::isfinite(rbf_gamma)) {
    throw ValidationError("rbf_gamma must be a positive finite number");
  }
}

HiddenWeights init_random(const ElmParams& params, std::size_t n_features) {
  params.validate();
  if (n_features < 1) throw ValidationError("init_random: need at least one feature");
  Rng rng(params.seed);
  Matrix w = Matrix::zeros(n_features, params.hidden_nodes);
  for (double& x : w.data()) x = rng.uniform(-1.0, 1.0);
  Matrix b = Matrix::zeros(1, params.hidden_nodes);
  for (double& x : b.data()) x = rng.uniform(-1.0, 1.0);
  return {std::move(w), std::move(b)};
}

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

Matrix hidden_layer(const Matrix& x, const Matrix& w, const Matrix& b, Activation activation,
                    double rbf_gamma) {
  if (x.cols() != w.rows()) {
    throw ShapeError("hidden_layer: inputs " + x.shape_string() + " do not match weights " +
                     w.shape_string());
  }
  if (b.rows() != 1 || b.cols() != w.cols()) {
    throw ShapeError("hidden_layer: biases " + b.shape_string() + " do not match weights " +
                     w.shape_string());
  }

  if (activation == Activation::kRbf) {
    Matrix h = Matrix::zeros(x.rows(), w.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const auto xi = x.row(i);
      for (std::size_t j = 0; j < w.cols(); ++j) {
        double d2 = 0.0;
        for (std::size_t k = 0; k < w.rows(); ++k) {
          const double d = xi[k] - w(k, j);
          d2 += d * d;
        }
        h(i, j) = std::exp(-rbf_gamma * d2);
      }
    }
    return h;
  }

  Matrix h = matmul(x, w);
  const auto bias = b.row(0);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    auto hi = h.row(i);
    for (std::size_t j = 0; j < hi.size(); ++j) {
      const double z = hi[j] + bias[j];
      hi[j] = activation == Activation::kTanh ? std::tanh(z) : sigmoid(z);
    }
  }
  return h;
}

ElmModel::ElmModel(Matrix input_weights, Matrix biases, Matrix output_weights, ElmParams params)
    : input_weights_(std::move(input_weights)),
      biases_(std::move(biases)),
      output_weights_(std::move(output_weights)),
      params_(params) {
  params_.validate();
  const std::size_t l = params_.hidden_nodes;
  if (input_weights_.rows() < 1 || input_weights_.cols() != l || biases_.rows() != 1 ||
      biases_.cols() != l || output_weights_.rows() != l || output_weights_.cols() != 1) {
    throw ShapeError("ElmModel: inconsistent shapes W " + input_weights_.shape_string() + ", b " +
                     biases_.shape_string() + ", beta " + output_weights_.shape_string() +
                     " for L=" + std::to_string(l));
  }
  if (!input_weights_.all_finite() || !biases_.all_finite() || !output_weights_.all_finite()) {
    throw ValidationError("ElmModel: non-finite weights");
  }
}

ElmModel fit(const Matrix& x_train, std::span<const Label> y_train, const ElmParams& params) {
  params.validate();
  if (x_train.rows() < 1) throw ValidationError("fit: training set is empty");
  if (x_train.rows() != y_train.size()) {
    throw ShapeError("fit: " + std::to_string(x_train.rows()) + " feature rows but " +
                     std::to_string(y_train.size()) + " labels");
  }
  for (std::size_t i = 0; i < x_train.rows(); ++i) {
    for (double v : x_train.row(i)) {
      if (!std::isfinite(v)) {
        throw ValidationError("fit: non-finite feature value in row " + std::to_string(i));
      }
    }
  }
  std::vector<double> targets(y_train.size());
  for (std::size_t i = 0; i < y_train.size(); ++i) {
    if (y_train[i] > 1) throw ValidationError("fit: label in row " + std::to_string(i) + " is not 0/1");
    targets[i] = y_train[i] == 1 ? 1.0 : 0.0;
  }

  HiddenWeights hw = init_random(params, x_train.cols());
  const Matrix h = hidden_layer(x_train, hw.input_weights, hw.biases, params.activation,
                                params.rbf_gamma);
  Matrix beta = lstsq(h, Matrix::column(targets));
  return ElmModel(std::move(hw.input_weights), std::move(hw.biases), std::move(beta), params);
}

std::vector<double> score(const ElmModel& model, const Matrix& x) {
  if (x.cols() != model.n_features()) {
    throw ShapeError("score: model expects " + std::to_string(model.n_features()) +
                     " features, got " + std::to_string(x.cols()));
  }
  if (x.rows() == 0) return {};
  const Matrix h = hidden_layer(x, model.input_weights(), model.biases(),
                                model.params().activation, model.params().rbf_gamma);
  const Matrix y = matmul(h, model.output_weights());
  return {y.data().begin(), y.data().end()};
}

Labels threshold_scores(std::span<const double> scores, double threshold) {
  Labels out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) out[i] = scores[i] >= threshold ? 1 : 0;
  return out;
}

Labels predict(const ElmModel& model, const Matrix& x, double threshold) {
  return threshold_scores(score(model, x), threshold);
}

}  // namespace elmddos
