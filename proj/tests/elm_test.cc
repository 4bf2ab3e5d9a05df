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

#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "elmddos/errors.h"
#include "test_support.h"

namespace elmddos {
namespace {

using testing::random_matrix;

Labels random_labels(Rng& rng, std::size_t n) {
  Labels y(n);
  for (auto& v : y) v = static_cast<Label>(rng.below(2));
  return y;
}

double training_sse(const ElmModel& m, const Matrix& x, const Labels& y) {
  const std::vector<double> s = score(m, x);
  double sse = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) sse += (s[i] - y[i]) * (s[i] - y[i]);
  return sse;
}

// Scalar re-statement of the hidden-layer definitions.
double hidden_oracle(const Matrix& x, const Matrix& w, const Matrix& b, std::size_t i,
                     std::size_t j, Activation act, double gamma) {
  if (act == Activation::kRbf) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < x.cols(); ++k) d2 += std::pow(x(i, k) - w(k, j), 2);
    return std::exp(-gamma * d2);
  }
  double z = b(0, j);
  for (std::size_t k = 0; k < x.cols(); ++k) z += x(i, k) * w(k, j);
  return act == Activation::kTanh ? std::tanh(z) : 1.0 / (1.0 + std::exp(-z));
}

TEST(ElmParamsTest, Validation) {
  ElmParams p;
  EXPECT_NO_THROW(p.validate());
  p.hidden_nodes = 0;
  EXPECT_THROW(p.validate(), ValidationError);
  p = {};
  p.rbf_gamma = 0.0;
  EXPECT_THROW(p.validate(), ValidationError);
  p.rbf_gamma = std::numeric_limits<double>::infinity();
  EXPECT_THROW(p.validate(), ValidationError);
}

TEST(ElmParamsTest, ActivationNamesRoundTrip) {
  for (Activation a : {Activation::kTanh, Activation::kSigmoid, Activation::kRbf}) {
    EXPECT_EQ(parse_activation(activation_name(a)), a);
  }
  EXPECT_FALSE(parse_activation("relu").has_value());
}

TEST(InitRandomTest, DeterministicAndInRange) {
  ElmParams p;
  p.hidden_nodes = 17;
  p.seed = 5;
  const HiddenWeights a = init_random(p, 4);
  const HiddenWeights b = init_random(p, 4);
  EXPECT_EQ(a.input_weights, b.input_weights);
  EXPECT_EQ(a.biases, b.biases);
  EXPECT_EQ(a.input_weights.rows(), 4u);
  EXPECT_EQ(a.input_weights.cols(), 17u);
  EXPECT_EQ(a.biases.rows(), 1u);
  EXPECT_EQ(a.biases.cols(), 17u);
  for (double v : a.input_weights.data()) {
    EXPECT_GE(v, -1.0);
    EXPECT_LT(v, 1.0);
  }
  p.seed = 6;
  EXPECT_NE(init_random(p, 4).input_weights, a.input_weights);
}

TEST(InitRandomTest, DrawsWeightsRowMajorThenBiases) {
  ElmParams p;
  p.hidden_nodes = 3;
  p.seed = 77;
  const HiddenWeights hw = init_random(p, 2);
  Rng r(77);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(hw.input_weights(i, j), r.uniform(-1, 1));
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(hw.biases(0, j), r.uniform(-1, 1));
}

TEST(HiddenLayerTest, ZeroInputsAndWeights) {
  const Matrix x = Matrix::zeros(2, 3);
  const Matrix w = Matrix::zeros(3, 4);
  const Matrix b = Matrix::zeros(1, 4);
  const Matrix tanh_h = hidden_layer(x, w, b, Activation::kTanh, 1.0);
  const Matrix sigmoid_h = hidden_layer(x, w, b, Activation::kSigmoid, 1.0);
  const Matrix rbf_h = hidden_layer(x, w, b, Activation::kRbf, 1.0);
  for (double v : tanh_h.data()) EXPECT_EQ(v, 0.0);
  for (double v : sigmoid_h.data()) EXPECT_EQ(v, 0.5);
  for (double v : rbf_h.data()) EXPECT_EQ(v, 1.0);
}

TEST(HiddenLayerTest, RbfAtCenterIsOne) {
  const Matrix w = Matrix::from_rows({{0.3, -2.0}, {0.7, 1.0}});
  const Matrix x = Matrix::from_rows({{0.3, 0.7}});
  const Matrix h = hidden_layer(x, w, Matrix::zeros(1, 2), Activation::kRbf, 2.5);
  EXPECT_EQ(h(0, 0), 1.0);
  EXPECT_NEAR(h(0, 1), std::exp(-2.5 * (2.3 * 2.3 + 0.3 * 0.3)), 1e-15);
}

TEST(HiddenLayerTest, MatchesScalarOracle) {
  Rng rng(31);
  for (Activation act : {Activation::kTanh, Activation::kSigmoid, Activation::kRbf}) {
    const Matrix x = random_matrix(rng, 7, 5, -3, 3);
    const Matrix w = random_matrix(rng, 5, 9);
    const Matrix b = random_matrix(rng, 1, 9);
    const Matrix h = hidden_layer(x, w, b, act, 0.7);
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 9; ++j)
        EXPECT_NEAR(h(i, j), hidden_oracle(x, w, b, i, j, act, 0.7), 1e-12);
  }
}

TEST(HiddenLayerTest, SigmoidIsStableForLargeInputs) {
  const Matrix w = Matrix::from_rows({{1.0}});
  const Matrix h = hidden_layer(Matrix::from_rows({{-1000.0}, {1000.0}}), w, Matrix::zeros(1, 1),
                                Activation::kSigmoid, 1.0);
  EXPECT_EQ(h(0, 0), 0.0);
  EXPECT_EQ(h(1, 0), 1.0);
}

TEST(FitTest, SingleSampleWithOneNode) {
  ElmParams p;
  p.hidden_nodes = 1;
  const Labels y{1};
  const ElmModel m = fit(Matrix::from_rows({{0.4, -0.2}}), y, p);
  EXPECT_NEAR(score(m, Matrix::from_rows({{0.4, -0.2}}))[0], 1.0, 1e-12);
}

TEST(FitTest, InterpolatesWhenNodesEqualSamples) {
  Rng rng(32);
  const Matrix x = random_matrix(rng, 50, 6);
  const Labels y = random_labels(rng, 50);
  for (Activation act : {Activation::kTanh, Activation::kSigmoid}) {
    ElmParams p;
    p.hidden_nodes = 50;
    p.activation = act;
    p.seed = 3;
    const ElmModel m = fit(x, y, p);
    EXPECT_LT(training_sse(m, x, y) / 50.0, 1e-6) << activation_name(act);
  }
}

TEST(FitTest, BitwiseDeterministic) {
  Rng rng(33);
  const Matrix x = random_matrix(rng, 80, 5);
  const Labels y = random_labels(rng, 80);
  ElmParams p;
  p.hidden_nodes = 20;
  const ElmModel a = fit(x, y, p);
  const ElmModel b = fit(x, y, p);
  EXPECT_EQ(a.output_weights(), b.output_weights());
  const auto sa = score(a, x), sb = score(b, x);
  ASSERT_EQ(sa.size(), sb.size());
  EXPECT_EQ(std::memcmp(sa.data(), sb.data(), sa.size() * sizeof(double)), 0);
}

TEST(FitTest, OutputWeightsMinimiseTrainingError) {
  Rng rng(34);
  const Matrix x = random_matrix(rng, 60, 4);
  const Labels y = random_labels(rng, 60);
  ElmParams p;
  p.hidden_nodes = 12;
  const ElmModel m = fit(x, y, p);
  const double best = training_sse(m, x, y);
  for (int i = 0; i < 1000; ++i) {
    Matrix beta = m.output_weights();
    for (double& v : beta.data()) v += rng.uniform(-1e-3, 1e-3);
    const ElmModel other(m.input_weights(), m.biases(), beta, p);
    EXPECT_GE(training_sse(other, x, y), best - 1e-10);
  }
}

TEST(FitTest, DuplicateRowsAreHandled) {
  const Matrix x = Matrix::from_rows({{1, 2}, {1, 2}, {1, 2}, {-1, 0}});
  const Labels y{1, 1, 1, 0};
  ElmParams p;
  p.hidden_nodes = 8;
  const ElmModel m = fit(x, y, p);
  const auto s = score(m, x);
  EXPECT_NEAR(s[0], 1.0, 1e-9);
  EXPECT_NEAR(s[3], 0.0, 1e-9);
}

TEST(FitTest, RejectsBadInputs) {
  ElmParams p;
  p.hidden_nodes = 4;
  const Labels two{0, 1};
  EXPECT_THROW((void)fit(Matrix::zeros(3, 2), two, p), ShapeError);
  const Labels bad{0, 2};
  EXPECT_THROW((void)fit(Matrix::zeros(2, 2), bad, p), ValidationError);
}

TEST(ScoreTest, EmptyInputGivesEmptyOutput) {
  ElmParams p;
  p.hidden_nodes = 3;
  const Labels y{0, 1};
  const ElmModel m = fit(Matrix::from_rows({{0.0}, {1.0}}), y, p);
  EXPECT_TRUE(score(m, Matrix::zeros(0, 1)).empty());
  EXPECT_THROW((void)score(m, Matrix::zeros(2, 3)), ShapeError);
}

TEST(PredictTest, ThresholdExamples) {
  const std::vector<double> s{0.2, 0.5, 0.9};
  EXPECT_EQ(threshold_scores(s, 0.5), (Labels{0, 1, 1}));
  EXPECT_EQ(threshold_scores(s, 1e18), (Labels{0, 0, 0}));
  EXPECT_EQ(threshold_scores(s, -1e18), (Labels{1, 1, 1}));
}

TEST(PredictTest, PositiveCountIsMonotoneInThreshold) {
  Rng rng(35);
  std::vector<double> s(200);
  for (double& v : s) v = rng.uniform(-1, 2);
  std::size_t previous = s.size() + 1;
  for (double t = -1.5; t <= 2.5; t += 0.05) {
    std::size_t positives = 0;
    for (Label l : threshold_scores(s, t)) positives += l;
    EXPECT_LE(positives, previous);
    previous = positives;
  }
}

TEST(ElmModelTest, ConstructorChecksShapes) {
  ElmParams p;
  p.hidden_nodes = 2;
  EXPECT_THROW(ElmModel(Matrix::zeros(3, 2), Matrix::zeros(1, 3), Matrix::zeros(2, 1), p),
               ShapeError);
  EXPECT_THROW(ElmModel(Matrix::zeros(3, 2), Matrix::zeros(1, 2), Matrix::zeros(3, 1), p),
               ShapeError);
  EXPECT_NO_THROW(ElmModel(Matrix::zeros(3, 2), Matrix::zeros(1, 2), Matrix::zeros(2, 1), p));
}

}  // namespace
}  // namespace elmddos
