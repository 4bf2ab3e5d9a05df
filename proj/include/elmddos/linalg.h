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

#ifndef ELMDDOS_LINALG_H_
#define ELMDDOS_LINALG_H_

// Thin SVD and the Moore-Penrose pseudoinverse built on it.
//
// svd() is a one-sided (Hestenes) Jacobi SVD. Tall inputs are first reduced
// with a Householder QR so the Jacobi sweeps run on the small square factor;
// wide inputs are handled through their transpose.

#include <cstddef>
#include <optional>
#include <vector>

#include "elmddos/matrix.h"

namespace elmddos {

inline constexpr int kMaxJacobiSweeps = 60;

struct SvdResult {
  Matrix u;                            // m x k, orthonormal columns
  std::vector<double> singular_values;  // k = min(m, n), non-increasing, >= 0
  Matrix vt;                           // k x n, orthonormal rows
};

// Throws NumericError if the sweeps have not converged after
// kMaxJacobiSweeps; ValidationError on empty or non-finite input.
SvdResult svd(const Matrix& a);

// Default singular-value cutoff relative to the largest singular value:
// machine epsilon * max(rows, cols).
double default_rcond(const Matrix& a);

// A+ = V diag(1/s_i for s_i > rcond * s_max, else 0) U^T. Passing nullopt
// selects default_rcond(a).
Matrix pseudoinverse(const Matrix& a, std::optional<double> rcond = std::nullopt);

// Minimum-Frobenius-norm minimizer of ||A X - T||_F, computed as
// V diag(s+) (U^T T) without forming A+.
Matrix lstsq(const Matrix& a, const Matrix& targets,
             std::optional<double> rcond = std::nullopt);

}  // namespace elmddos

#endif  // ELMDDOS_LINALG_H_
