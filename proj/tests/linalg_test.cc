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

#include "elmddos/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "elmddos/errors.h"
#include "test_support.h"

namespace elmddos {
namespace {

using testing::max_abs;
using testing::max_abs_diff;
using testing::naive_matmul;
using testing::naive_transpose;
using testing::random_low_rank;
using testing::random_matrix;

Matrix diag_product(const SvdResult& s) {
  Matrix us = s.u;
  for (std::size_t i = 0; i < us.rows(); ++i)
    for (std::size_t j = 0; j < us.cols(); ++j) us(i, j) *= s.singular_values[j];
  return naive_matmul(us, s.vt);
}

void expect_orthonormal_columns(const Matrix& q, double tol) {
  const Matrix gram = naive_matmul(naive_transpose(q), q);
  EXPECT_LE(max_abs_diff(gram, Matrix::identity(q.cols())), tol);
}

void expect_valid_svd(const Matrix& a, double tol) {
  const SvdResult s = svd(a);
  const std::size_t k = std::min(a.rows(), a.cols());
  ASSERT_EQ(s.u.rows(), a.rows());
  ASSERT_EQ(s.u.cols(), k);
  ASSERT_EQ(s.vt.rows(), k);
  ASSERT_EQ(s.vt.cols(), a.cols());
  ASSERT_EQ(s.singular_values.size(), k);
  for (std::size_t i = 0; i < k; ++i) {
    EXPECT_GE(s.singular_values[i], 0.0);
    if (i > 0) {
      EXPECT_LE(s.singular_values[i], s.singular_values[i - 1]);
    }
  }
  expect_orthonormal_columns(s.u, tol);
  expect_orthonormal_columns(naive_transpose(s.vt), tol);
  const double scale = std::max(1.0, max_abs(a));
  EXPECT_LE(max_abs_diff(diag_product(s), a), tol * scale);
}

// The four Moore-Penrose conditions, relative to the size of the operands.
void expect_penrose(const Matrix& a, const Matrix& p, double tol) {
  const Matrix ap = naive_matmul(a, p);
  const Matrix pa = naive_matmul(p, a);
  const double sa = std::max(1.0, max_abs(a));
  const double sp = std::max(1.0, max_abs(p));
  EXPECT_LE(max_abs_diff(naive_matmul(ap, a), a), tol * sa);
  EXPECT_LE(max_abs_diff(naive_matmul(pa, p), p), tol * sp);
  EXPECT_LE(max_abs_diff(ap, naive_transpose(ap)), tol * sa * sp);
  EXPECT_LE(max_abs_diff(pa, naive_transpose(pa)), tol * sa * sp);
}

TEST(SvdTest, DiagonalMatrix) {
  const SvdResult s = svd(Matrix::from_rows({{3, 0}, {0, 2}}));
  ASSERT_EQ(s.singular_values.size(), 2u);
  EXPECT_NEAR(s.singular_values[0], 3.0, 1e-15);
  EXPECT_NEAR(s.singular_values[1], 2.0, 1e-15);
}

TEST(SvdTest, ZeroMatrixHasZeroValuesAndOrthonormalFactors) {
  const SvdResult s = svd(Matrix::zeros(2, 2));
  EXPECT_EQ(s.singular_values, (std::vector<double>{0.0, 0.0}));
  expect_orthonormal_columns(s.u, 1e-15);
  expect_orthonormal_columns(naive_transpose(s.vt), 1e-15);
}

TEST(SvdTest, RandomTallMatrix) {
  Rng rng(21);
  expect_valid_svd(random_matrix(rng, 6, 3), 1e-10);
}

TEST(SvdTest, RandomShapesIncludingWideAndRankDeficient) {
  Rng rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 1 + rng.below(50), n = 1 + rng.below(50);
    const std::size_t r = rng.below(std::min(m, n) + 1);
    const Matrix a = trial % 3 == 0 ? random_low_rank(rng, m, n, r) : random_matrix(rng, m, n);
    SCOPED_TRACE(::testing::Message() << a.shape_string() << " rank<=" << r);
    expect_valid_svd(a, 1e-10);
  }
}

TEST(SvdTest, RejectsEmptyInput) { EXPECT_THROW((void)svd(Matrix()), ValidationError); }

TEST(PseudoinverseTest, DiagonalInvertsEntries) {
  const Matrix p = pseudoinverse(Matrix::from_rows({{2, 0}, {0, 4}}));
  EXPECT_LE(max_abs_diff(p, Matrix::from_rows({{0.5, 0}, {0, 0.25}})), 1e-15);
}

TEST(PseudoinverseTest, ZeroMatrixGivesZeroTranspose) {
  const Matrix p = pseudoinverse(Matrix::zeros(3, 2));
  EXPECT_EQ(p, Matrix::zeros(2, 3));
}

TEST(PseudoinverseTest, FullColumnRankMatchesNormalEquations) {
  Rng rng(23);
  const Matrix a = random_matrix(rng, 8, 5);
  EXPECT_LE(max_abs_diff(pseudoinverse(a), testing::normal_equations_pinv(a)), 1e-8);
}

TEST(PseudoinverseTest, PenroseConditionsOnRandomMatrices) {
  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + rng.below(50), n = 1 + rng.below(50);
    Matrix a;
    switch (trial % 4) {
      case 0:
        a = random_low_rank(rng, m, n, rng.below(std::min(m, n)) + 1);
        break;
      case 1:
        a = Matrix::zeros(m, n);
        break;
      default:
        a = random_matrix(rng, m, n, -10.0, 10.0);
    }
    SCOPED_TRACE(::testing::Message() << "trial " << trial << " " << a.shape_string());
    expect_penrose(a, pseudoinverse(a), 1e-9);
  }
}

TEST(PseudoinverseTest, RcondTruncatesSmallSingularValues) {
  const Matrix a = Matrix::from_rows({{1, 0}, {0, 1e-12}});
  const Matrix p = pseudoinverse(a, 1e-6);
  EXPECT_LE(max_abs_diff(p, Matrix::from_rows({{1, 0}, {0, 0}})), 1e-15);
  EXPECT_THROW((void)pseudoinverse(a, -1.0), ValidationError);
}

TEST(LstsqTest, IdentitySystemReturnsTargets) {
  const Matrix t = Matrix::from_rows({{1}, {2}, {3}});
  EXPECT_LE(max_abs_diff(lstsq(Matrix::identity(3), t), t), 1e-15);
}

TEST(LstsqTest, OverdeterminedConsistentSystemIsExact) {
  const Matrix a = Matrix::from_rows({{1, 0}, {0, 1}, {1, 1}});
  const Matrix t = Matrix::from_rows({{1}, {2}, {3}});
  EXPECT_LE(max_abs_diff(lstsq(a, t), Matrix::from_rows({{1}, {2}})), 1e-12);
}

TEST(LstsqTest, RankDeficientPicksMinimumNormSolution) {
  // Rows are multiples of (1, 2, 2); solutions of x + 2y + 2z = 3 form a
  // plane whose point closest to the origin is (1, 2, 2) / 3.
  const Matrix a = Matrix::from_rows({{1, 2, 2}, {2, 4, 4}, {-1, -2, -2}});
  const Matrix t = Matrix::from_rows({{3}, {6}, {-3}});
  const Matrix x = lstsq(a, t);
  EXPECT_LE(max_abs_diff(x, Matrix::from_rows({{1.0 / 3}, {2.0 / 3}, {2.0 / 3}})), 1e-12);
  // Every other exact solution x0 + s*u + r*v found by enumeration is longer.
  const double base = testing::sum_squares(x);
  for (int s = -3; s <= 3; ++s)
    for (int r = -3; r <= 3; ++r) {
      if (s == 0 && r == 0) continue;
      const Matrix other = Matrix::from_rows({{x(0, 0) + 2.0 * s},
                                              {x(1, 0) - 1.0 * s + 1.0 * r},
                                              {x(2, 0) - 1.0 * r}});
      EXPECT_LE(max_abs_diff(naive_matmul(a, other), t), 1e-9);
      EXPECT_GT(testing::sum_squares(other), base);
    }
}

TEST(LstsqTest, ResidualIsLocallyMinimal) {
  Rng rng(25);
  const Matrix a = random_matrix(rng, 30, 6);
  const Matrix t = random_matrix(rng, 30, 1);
  const Matrix x = lstsq(a, t);
  const double best = testing::sum_squares(naive_matmul(a, x) - t);
  for (int i = 0; i < 1000; ++i) {
    Matrix y = x;
    for (double& v : y.data()) v += rng.uniform(-1e-3, 1e-3);
    EXPECT_GE(testing::sum_squares(naive_matmul(a, y) - t), best - 1e-12);
  }
}

TEST(LstsqTest, MatchesNormalEquationsForFullRank) {
  Rng rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.below(10);
    const std::size_t m = n + rng.below(30);
    const Matrix a = random_matrix(rng, m, n);
    const Matrix t = random_matrix(rng, m, 2);
    const Matrix expected = naive_matmul(testing::normal_equations_pinv(a), t);
    EXPECT_LE(max_abs_diff(lstsq(a, t), expected), 1e-8);
  }
}

TEST(LstsqTest, RowMismatchIsAShapeError) {
  EXPECT_THROW((void)lstsq(Matrix::zeros(3, 2), Matrix::zeros(2, 1)), ShapeError);
}

}  // namespace
}  // namespace elmddos
