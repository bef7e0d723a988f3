// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

#include "senrec/types.hpp"

namespace senrec::fixtures {

// Worked 2x2 example shared by the determinant and solve regression tests.

inline Matrix example_e() {
  Matrix e(2, 2);
  e << Complex{0.75, 0.0}, Complex{0.25, 0.0}, Complex{0.25, 0.0}, Complex{0.75, 0.0};
  return e;
}

inline Vector example_b() {
  Vector b(2);
  b << Complex{1.0 / std::sqrt(2.0), 0.0}, Complex{1.0 / std::sqrt(2.0), 0.0};
  return b;
}

inline constexpr double example_sigma() { return 0.35355339059327373; }  // 1/(2√2)

/// A known-good two-excitation block for the determinant example, written in
/// the ascending basis {0011, 0101, 0110, 1001, 1010, 1100}. Row 0101 is the
/// determinant row (+1/√2 at 1001, −1/√2 at 0110); the other rows are one
/// particular unitary completion.
inline Eigen::MatrixXcd example_w2() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(6, 6);
  w(0, 2) = r;   // 0011 <- (0110 + 1001)/√2
  w(0, 3) = r;
  w(1, 2) = -r;  // 0101 <- (1001 − 0110)/√2
  w(1, 3) = r;
  w(2, 0) = 1;   // 0110 <- 0011
  w(3, 1) = 1;   // 1001 <- 0101
  w(4, 5) = 1;   // 1010 <- 1100
  w(5, 4) = 1;   // 1100 <- 1010
  return w;
}

/// The receiver density that evolution produces, in the
/// basis {00, 01, 10, 11}. Exact surd entries; the matrix is real symmetric.
inline Eigen::MatrixXcd example_receiver_density() {
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  Eigen::MatrixXd rho(4, 4);
  const double a01 = 5.0 * s3 / 128.0 + 27.0 * s6 / 256.0;
  rho << 3.0 / 8.0, a01, 15.0 * s6 / 256.0, 3.0 * s2 / 32.0,
         a01, 113.0 / 256.0, 27.0 / 256.0, 3.0 * s3 / 32.0,
         15.0 * s6 / 256.0, 27.0 / 256.0, 15.0 / 256.0, s3 / 32.0,
         3.0 * s2 / 32.0, 3.0 * s3 / 32.0, s3 / 32.0, 1.0 / 8.0;
  return rho.cast<Complex>();
}

}  // namespace senrec::fixtures
