// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "senrec/harness.hpp"

#include <algorithm>
#include <numeric>

namespace senrec::harness {

namespace {

constexpr double kDetFloor = 1e-3;

bool needs_det_guard(Operation op) {
  return op == Operation::determinant || op == Operation::inverse || op == Operation::linsolve;
}

/// |det| of the matrix as the plan actually encodes it (per-row scales folded in).
double scaled_det_magnitude(const Matrix& e, const ProtocolPlan& plan) {
  Matrix scaled = e;
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    scaled.row(i) *= plan.scales.factors[static_cast<std::size_t>(i)];
  }
  return std::abs(oracle::det_ref(scaled));
}

}  // namespace

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> dist(-0.6, 0.6);
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = Complex{dist(rng), dist(rng)};
  }
  return m;
}

Vector random_unit_vector(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n);
  double norm = 0.0;
  while (norm < 1e-3) {
    for (int i = 0; i < n; ++i) v(i) = Complex{dist(rng), dist(rng)};
    norm = v.norm();
  }
  return v / v.norm();
}

Instance random_instance(std::mt19937_64& rng, Operation op, int m, int k, int n) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    Instance inst;
    inst.op = op;
    switch (op) {
      case Operation::matvec:
        inst.a = random_matrix(rng, m, k);
        inst.v = random_unit_vector(rng, k) * 0.9;  // any sub-unit payload works
        break;
      case Operation::matmul:
        inst.a = random_matrix(rng, m, k);
        inst.b = random_matrix(rng, k, n);
        break;
      case Operation::matsum:
        inst.a = random_matrix(rng, m, n);
        inst.b = random_matrix(rng, m, n);
        break;
      case Operation::determinant:
      case Operation::inverse:
        inst.a = random_matrix(rng, n, n);
        break;
      case Operation::linsolve:
        inst.a = random_matrix(rng, n, n);
        inst.v = random_unit_vector(rng, n);
        break;
    }
    if (!needs_det_guard(op)) return inst;
    const ProtocolPlan plan = build_plan(inst);
    if (scaled_det_magnitude(inst.a, plan) >= kDetFloor) return inst;
  }
  throw std::runtime_error("random_instance: could not draw a well-conditioned matrix");
}

ProtocolPlan build_plan(const Instance& inst, const ScalePolicy& policy) {
  switch (inst.op) {
    case Operation::matvec: return plan_matvec(inst.a, inst.v, policy);
    case Operation::matmul: return plan_matmul(inst.a, inst.b, policy);
    case Operation::matsum: return plan_matsum(inst.a, inst.b, inst.lambda, policy);
    case Operation::determinant: return plan_determinant(inst.a, policy);
    case Operation::inverse: return plan_inverse(inst.a, inst.sigma, policy);
    case Operation::linsolve: return plan_linsolve(inst.a, inst.v, inst.sigma, policy);
  }
  throw std::logic_error("build_plan: unknown operation");
}

Matrix oracle_result(const Instance& inst) {
  switch (inst.op) {
    case Operation::matvec: return oracle::matvec_ref(inst.a, inst.v);
    case Operation::matmul: return oracle::matmul_ref(inst.a, inst.b);
    case Operation::matsum: return oracle::sum_ref(inst.a, inst.b);
    case Operation::determinant: {
      Matrix out(1, 1);
      out(0, 0) = oracle::det_ref(inst.a);
      return out;
    }
    case Operation::inverse: return oracle::inv_ref(inst.a);
    case Operation::linsolve: return oracle::solve_ref(inst.a, inst.v);
  }
  throw std::logic_error("oracle_result: unknown operation");
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

InstanceOutcome run_instance(const Instance& inst, bool run_dense, const EngineOptions& options) {
  InstanceOutcome outcome{build_plan(inst), oracle_result(inst), Matrix{}, {}, 0.0,
                          false,            Matrix{},            {},       0.0, 0.0,
                          std::nullopt,     std::nullopt};

  const RunResult sector = run_plan(outcome.plan, Engine::sector, options);
  outcome.sector_values = sector.values;
  outcome.sector_decoded = decode(outcome.plan, sector.values);
  outcome.sector_deviation = max_abs_diff(outcome.sector_decoded, outcome.oracle);

  if (run_dense) {
    RunResult dense = run_plan(outcome.plan, Engine::dense, options);
    outcome.dense_ran = true;
    outcome.dense_values = dense.values;
    outcome.dense_decoded = decode(outcome.plan, dense.values);
    outcome.dense_deviation = max_abs_diff(outcome.dense_decoded, outcome.oracle);
    for (const auto& [label, value] : dense.values) {
      outcome.engine_gap =
          std::max(outcome.engine_gap, std::abs(value - outcome.sector_values.at(label)));
    }
    outcome.receiver = std::move(dense.receiver);
    outcome.post_v = std::move(dense.post_v);
  }
  return outcome;
}

std::vector<int> shuffled_order(int size, std::uint64_t seed) {
  return shuffled_candidate_order(size, seed);
}

}  // namespace senrec::harness
