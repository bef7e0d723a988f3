// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "senrec/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace senrec::oracle {

namespace {

constexpr double kSingularTol = 1e-12;

void require_square(const Matrix& e, const char* who) {
  if (e.rows() != e.cols()) throw std::invalid_argument(std::string(who) + ": matrix not square");
}

int inversion_parity(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

/// Signed minor of `e` with row `row` and column `col` deleted.
Complex cofactor(const Matrix& e, Eigen::Index row, Eigen::Index col) {
  const Eigen::Index n = e.rows();
  Matrix minor(n - 1, n - 1);
  for (Eigen::Index r = 0, mr = 0; r < n; ++r) {
    if (r == row) continue;
    for (Eigen::Index c = 0, mc = 0; c < n; ++c) {
      if (c == col) continue;
      minor(mr, mc++) = e(r, c);
    }
    ++mr;
  }
  const double sign = ((row + col) % 2 == 0) ? 1.0 : -1.0;
  return sign * det_leibniz(minor);
}

}  // namespace

Vector matvec_ref(const Matrix& a, const Vector& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matvec_ref: shape mismatch");
  return a * v;
}

Matrix matmul_ref(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul_ref: inner dimensions differ");
  return a * b;
}

Matrix sum_ref(const Matrix& c, const Matrix& d) {
  if (c.rows() != d.rows() || c.cols() != d.cols()) {
    throw std::invalid_argument("sum_ref: shape mismatch");
  }
  return c + d;
}

Complex det_leibniz(const Matrix& e) {
  require_square(e, "det_leibniz");
  const auto n = static_cast<int>(e.rows());
  if (n == 0) return Complex{1.0, 0.0};
  if (n > 8) throw std::invalid_argument("det_leibniz: n > 8; use det_lu");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Complex det{0.0, 0.0};
  do {
    Complex term{static_cast<double>(inversion_parity(perm)), 0.0};
    for (int r = 0; r < n; ++r) term *= e(r, perm[static_cast<std::size_t>(r)]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

Complex det_lu(const Matrix& e) {
  require_square(e, "det_lu");
  if (e.rows() == 0) return Complex{1.0, 0.0};
  return Eigen::PartialPivLU<Matrix>(e).determinant();
}

Complex det_ref(const Matrix& e) {
  require_square(e, "det_ref");
  return e.rows() <= 8 ? det_leibniz(e) : det_lu(e);
}

Matrix inv_ref(const Matrix& e) {
  require_square(e, "inv_ref");
  const Eigen::Index n = e.rows();
  const Complex det = det_ref(e);
  if (std::abs(det) < kSingularTol) throw SingularMatrixError("inv_ref: matrix is singular");
  if (n <= 4) {
    Matrix inv(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) inv(j, i) = cofactor(e, i, j) / det;
    }
    return inv;
  }
  return Eigen::PartialPivLU<Matrix>(e).inverse();
}

Vector solve_ref(const Matrix& e, const Vector& b) {
  require_square(e, "solve_ref");
  if (e.rows() != b.size()) throw std::invalid_argument("solve_ref: shape mismatch");
  if (e.rows() <= 4) return inv_ref(e) * b;
  const Complex det = det_lu(e);
  if (std::abs(det) < kSingularTol) throw SingularMatrixError("solve_ref: matrix is singular");
  return Eigen::PartialPivLU<Matrix>(e).solve(b);
}

}  // namespace senrec::oracle
