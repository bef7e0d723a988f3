// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <random>
#include <string>

#include "senrec/evolution.hpp"
#include "senrec/oracle.hpp"
#include "senrec/protocols.hpp"

namespace senrec::harness {

/// One randomized protocol instance: the operation plus its classical inputs.
struct Instance {
  Operation op;
  Matrix a;      // A, C, or E
  Matrix b;      // B or D (matmul/sum)
  Vector v;      // v or b (matvec/linsolve)
  double lambda = kDefaultLambda;
  double sigma = kDefaultSigma;
};

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols);
Vector random_unit_vector(std::mt19937_64& rng, int n);

/// Draw an instance with the given dimensions. Determinant/inverse/solve
/// instances are redrawn until the auto-scaled matrix has |det| ≥ 1e−3, so
/// tolerance claims stay honest.
Instance random_instance(std::mt19937_64& rng, Operation op, int m, int k, int n);

ProtocolPlan build_plan(const Instance& inst, const ScalePolicy& policy = {});
Matrix oracle_result(const Instance& inst);

double max_abs_diff(const Matrix& a, const Matrix& b);

struct InstanceOutcome {
  ProtocolPlan plan;
  Matrix oracle;
  Matrix sector_decoded;
  ExtractionValues sector_values;
  double sector_deviation = 0.0;
  bool dense_ran = false;
  Matrix dense_decoded;
  ExtractionValues dense_values;
  double dense_deviation = 0.0;
  double engine_gap = 0.0;  // max |dense − sector| over extraction labels
  std::optional<ReceiverDensity> receiver;
  std::optional<ReceiverDensity> post_v;
};

/// Run one instance on the sector engine and, when requested, the dense
/// engine, comparing both against the oracle.
InstanceOutcome run_instance(const Instance& inst, bool run_dense,
                             const EngineOptions& options = {});

/// Deterministic shuffled candidate order for completion-permutation tests.
std::vector<int> shuffled_order(int size, std::uint64_t seed);

}  // namespace senrec::harness
