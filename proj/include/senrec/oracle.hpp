// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "senrec/types.hpp"

namespace senrec::oracle {

// Classical reference implementations used as ground truth when verifying
// the quantum protocols. The determinant/inverse routes deliberately share
// no permutation-sign code with the protocol builders.

Vector matvec_ref(const Matrix& a, const Vector& v);
Matrix matmul_ref(const Matrix& a, const Matrix& b);
Matrix sum_ref(const Matrix& c, const Matrix& d);

/// Leibniz sum over all n! permutations; parity by inversion counting. n ≤ 8.
Complex det_leibniz(const Matrix& e);
/// Partial-pivot LU determinant (any n).
Complex det_lu(const Matrix& e);
/// Leibniz for n ≤ 8, LU beyond.
Complex det_ref(const Matrix& e);

/// Adjugate/determinant for n ≤ 4, partial-pivot elimination beyond.
Matrix inv_ref(const Matrix& e);
Vector solve_ref(const Matrix& e, const Vector& b);

}  // namespace senrec::oracle
