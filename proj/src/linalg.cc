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
#include <numeric>
#include <string>

#include "elmddos/errors.h"

namespace elmddos {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Column-major scratch matrix; Jacobi and Householder both work column-wise.
struct ColMajor {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> v;

  ColMajor(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0.0) {}

  double* col(std::size_t j) { return v.data() + j * rows; }
  const double* col(std::size_t j) const { return v.data() + j * rows; }
  double& at(std::size_t i, std::size_t j) { return v[j * rows + i]; }
};

// Four interleaved partial sums combined in a fixed order: faster than a
// single running sum and still bit-reproducible.
double dot(const double* x, const double* y, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  for (; i < n; ++i) s0 += x[i] * y[i];
  return (s0 + s1) + (s2 + s3);
}

ColMajor to_col_major(const Matrix& a) {
  ColMajor out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a(i, j);
  }
  return out;
}

Matrix to_row_major(const ColMajor& a) {
  Matrix out = Matrix::zeros(a.rows, a.cols);
  for (std::size_t j = 0; j < a.cols; ++j) {
    const double* c = a.col(j);
    for (std::size_t i = 0; i < a.rows; ++i) out(i, j) = c[i];
  }
  return out;
}

// Householder QR with column pivoting (A P = Q R) of a column-major matrix
// with rows >= cols. At step k the remaining column with the largest
// residual norm moves to position k; perm[k] is its original index. On
// return `a` holds R in its leading n x n block; reflector k acts on rows
// k..m-1 and is stored in reflectors[k] (empty when nothing was left).
std::vector<std::vector<double>> householder_qr(ColMajor& a, std::vector<std::size_t>& perm) {
  const std::size_t m = a.rows;
  const std::size_t n = a.cols;
  std::vector<std::vector<double>> reflectors(n);
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> residual(n);
  for (std::size_t j = 0; j < n; ++j) residual[j] = dot(a.col(j), a.col(j), m);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t j = k + 1; j < n; ++j) {
      if (residual[j] > residual[best]) best = j;
    }
    if (best != k) {
      std::swap_ranges(a.col(k), a.col(k) + m, a.col(best));
      std::swap(residual[k], residual[best]);
      std::swap(perm[k], perm[best]);
    }

    double* x = a.col(k) + k;
    const std::size_t len = m - k;
    double scale = 0.0;
    for (std::size_t i = 0; i < len; ++i) scale = std::max(scale, std::fabs(x[i]));
    if (scale == 0.0) continue;
    double norm = 0.0;
    for (std::size_t i = 0; i < len; ++i) norm += (x[i] / scale) * (x[i] / scale);
    norm = scale * std::sqrt(norm);
    const double alpha = x[0] > 0.0 ? -norm : norm;

    std::vector<double> v(x, x + len);
    v[0] -= alpha;
    const double vnorm2 = dot(v.data(), v.data(), len);
    if (vnorm2 == 0.0) continue;

    x[0] = alpha;
    std::fill(x + 1, x + len, 0.0);
    for (std::size_t j = k + 1; j < n; ++j) {
      double* y = a.col(j) + k;
      const double s = 2.0 * dot(v.data(), y, len) / vnorm2;
      for (std::size_t i = 0; i < len; ++i) y[i] -= s * v[i];
      // Recomputed rather than downdated, so cancellation cannot creep in.
      residual[j] = dot(y + 1, y + 1, len - 1);
    }
    reflectors[k] = std::move(v);
  }
  return reflectors;
}

// Applies Q = H_0 H_1 ... H_{n-1} to every column of `b` (m rows).
void apply_q(const std::vector<std::vector<double>>& reflectors, ColMajor& b) {
  for (std::size_t k = reflectors.size(); k-- > 0;) {
    const auto& v = reflectors[k];
    if (v.empty()) continue;
    const double vnorm2 = dot(v.data(), v.data(), v.size());
    for (std::size_t j = 0; j < b.cols; ++j) {
      double* y = b.col(j) + k;
      const double s = 2.0 * dot(v.data(), y, v.size()) / vnorm2;
      for (std::size_t i = 0; i < v.size(); ++i) y[i] -= s * v[i];
    }
  }
}

// One-sided Jacobi: rotates column pairs of `b` until all are mutually
// orthogonal, accumulating the rotations into `v` (starts as identity).
void jacobi_orthogonalize(ColMajor& b, ColMajor& v, const Matrix& original) {
  const std::size_t m = b.rows;
  const std::size_t n = b.cols;
  const double tol = static_cast<double>(std::max<std::size_t>(n, 1)) * kEps;
  std::vector<double> sq_norms(n);

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    for (std::size_t j = 0; j < n; ++j) sq_norms[j] = dot(b.col(j), b.col(j), m);
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = sq_norms[p];
        const double beta = sq_norms[q];
        if (alpha == 0.0 || beta == 0.0) continue;
        double* bp = b.col(p);
        double* bq = b.col(q);
        const double gamma = dot(bp, bq, m);
        if (std::fabs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;

        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double x = bp[i];
          const double y = bq[i];
          bp[i] = c * x - s * y;
          bq[i] = s * x + c * y;
        }
        double* vp = v.col(p);
        double* vq = v.col(q);
        for (std::size_t i = 0; i < n; ++i) {
          const double x = vp[i];
          const double y = vq[i];
          vp[i] = c * x - s * y;
          vq[i] = s * x + c * y;
        }
        sq_norms[p] = alpha - t * gamma;
        sq_norms[q] = beta + t * gamma;
        rotated = true;
      }
    }
    if (!rotated) return;
  }
  throw NumericError("svd: Jacobi sweeps did not converge for " + original.shape_string() +
                     " matrix after " + std::to_string(kMaxJacobiSweeps) + " sweeps");
}

// Replaces the columns flagged in `missing` with unit vectors orthogonal to
// every other column (modified Gram-Schmidt against the canonical basis).
void complete_orthonormal(ColMajor& u, const std::vector<bool>& missing) {
  const std::size_t m = u.rows;
  std::vector<bool> have(u.cols);
  for (std::size_t j = 0; j < u.cols; ++j) have[j] = !missing[j];
  std::size_t next_basis = 0;
  for (std::size_t j = 0; j < u.cols; ++j) {
    if (have[j]) continue;
    std::vector<double> cand(m);
    for (; next_basis < m; ++next_basis) {
      std::fill(cand.begin(), cand.end(), 0.0);
      cand[next_basis] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < u.cols; ++k) {
          if (!have[k]) continue;
          const double proj = dot(u.col(k), cand.data(), m);
          for (std::size_t i = 0; i < m; ++i) cand[i] -= proj * u.col(k)[i];
        }
      }
      const double norm = std::sqrt(dot(cand.data(), cand.data(), m));
      if (norm > 0.5) {
        for (std::size_t i = 0; i < m; ++i) u.col(j)[i] = cand[i] / norm;
        have[j] = true;
        ++next_basis;
        break;
      }
    }
    if (!have[j]) throw NumericError("svd: could not complete orthonormal basis");
  }
}

// Thin SVD for rows >= cols. A P = Q R by pivoted QR; one-sided Jacobi on
// X = R^T gives X W = Z S with W orthogonal, so R = W S Z^T and
// A = (Q W) S (P Z)^T. Working on R^T after pivoting needs far fewer sweeps
// than working on R or A directly.
SvdResult svd_tall(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  ColMajor work = to_col_major(a);

  std::vector<std::size_t> perm;
  const std::vector<std::vector<double>> reflectors = householder_qr(work, perm);
  ColMajor x(n, n);  // R^T, lower triangular
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) x.at(j, i) = work.at(i, j);
  }

  ColMajor w(n, n);
  for (std::size_t i = 0; i < n; ++i) w.at(i, i) = 1.0;
  jacobi_orthogonalize(x, w, a);

  std::vector<double> sigma(n);
  std::vector<bool> zero_col(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    sigma[j] = std::sqrt(dot(x.col(j), x.col(j), n));
    if (sigma[j] == 0.0) {
      zero_col[j] = true;
    } else {
      for (std::size_t i = 0; i < n; ++i) x.col(j)[i] /= sigma[j];
    }
  }
  complete_orthonormal(x, zero_col);  // x now holds Z

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t p, std::size_t q) { return sigma[p] > sigma[q]; });

  ColMajor u_full(m, n);
  Matrix v = Matrix::zeros(n, n);
  SvdResult out;
  out.singular_values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    std::copy_n(w.col(src), n, u_full.col(j));
    const double* z = x.col(src);
    for (std::size_t k = 0; k < n; ++k) v(perm[k], j) = z[k];
    out.singular_values[j] = sigma[src];
  }
  apply_q(reflectors, u_full);
  out.u = to_row_major(u_full);
  out.vt = v.transpose();
  return out;
}

void check_input(const Matrix& a, const char* op) {
  if (a.empty()) throw ValidationError(std::string(op) + ": empty matrix");
  if (!a.all_finite()) throw ValidationError(std::string(op) + ": matrix has non-finite entries");
}

}  // namespace

SvdResult svd(const Matrix& a) {
  check_input(a, "svd");
  if (a.rows() >= a.cols()) return svd_tall(a);
  SvdResult t = svd_tall(a.transpose());
  return SvdResult{t.vt.transpose(), std::move(t.singular_values), t.u.transpose()};
}

double default_rcond(const Matrix& a) {
  return kEps * static_cast<double>(std::max(a.rows(), a.cols()));
}

Matrix pseudoinverse(const Matrix& a, std::optional<double> rcond) {
  const double cut = rcond.value_or(default_rcond(a));
  if (!(cut >= 0.0)) throw ValidationError("pseudoinverse: rcond must be >= 0");
  const SvdResult s = svd(a);
  const double cutoff = cut * s.singular_values.front();

  Matrix out = Matrix::zeros(a.cols(), a.rows());
  for (std::size_t k = 0; k < s.singular_values.size(); ++k) {
    const double sk = s.singular_values[k];
    if (!(sk > cutoff)) continue;
    const double inv = 1.0 / sk;
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double vik = s.vt(k, i) * inv;
      if (vik == 0.0) continue;
      auto out_row = out.row(i);
      for (std::size_t j = 0; j < a.rows(); ++j) out_row[j] += vik * s.u(j, k);
    }
  }
  return out;
}

Matrix lstsq(const Matrix& a, const Matrix& targets, std::optional<double> rcond) {
  if (a.rows() != targets.rows()) {
    throw ShapeError("lstsq: design matrix " + a.shape_string() + " and targets " +
                     targets.shape_string() + " have different row counts");
  }
  const double cut = rcond.value_or(default_rcond(a));
  if (!(cut >= 0.0)) throw ValidationError("lstsq: rcond must be >= 0");
  const SvdResult s = svd(a);
  const double cutoff = cut * s.singular_values.front();

  // c = diag(s+) U^T T, k x p
  const std::size_t k = s.singular_values.size();
  Matrix c = matmul(s.u.transpose(), targets);
  for (std::size_t i = 0; i < k; ++i) {
    const double si = s.singular_values[i];
    const double inv = si > cutoff ? 1.0 / si : 0.0;
    for (double& x : c.row(i)) x *= inv;
  }
  return matmul(s.vt.transpose(), c);
}

}  // namespace elmddos
