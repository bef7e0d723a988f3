// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace senrec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;

/// Payload does not fit the strict norm bound (or the vacuum would be
/// numerically degenerate); the caller must rescale.
struct NormalizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Extracted determinant element too small to divide by.
struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense engine asked to simulate more qubits than its cap allows.
struct DenseCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace senrec
