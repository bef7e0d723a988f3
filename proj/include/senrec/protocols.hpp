// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "senrec/excitation_space.hpp"
#include "senrec/types.hpp"
#include "senrec/unitary_forge.hpp"

namespace senrec {

enum class Operation { matvec, matmul, matsum, determinant, inverse, linsolve };

const char* operation_name(Operation op);

/// How payloads are shrunk to fit the strict norm bound. Auto mode picks a
/// scale s ∈ (0,1] per matrix (per row for determinant/inverse/linsolve) so
/// that s²·‖payload‖² plus any fixed extras stays ≤ 1 − target_vacuum_floor.
struct ScalePolicy {
  enum class Mode { off, automatic };
  Mode mode = Mode::automatic;
  double target_vacuum_floor = 0.25;

  static ScalePolicy off() { return {Mode::off, 0.25}; }
};

/// Scale factors applied before encoding, needed to undo scaling at decode.
struct ScaleRecord {
  std::vector<double> factors;  // per matrix, or per row for det/inverse/solve
  double b_embed_norm = 1.0;    // linsolve: ‖diag(s)·b‖ of the embedded vector
  double b_input_norm = 1.0;    // linsolve: ‖b‖ when auto-normalization ran
};

/// One receiver element to read out. Labels are 1-based (i or (i,j)); (0,0)
/// marks the determinant element of the inverse/linsolve protocols. Targets
/// with from_v set are read after the receiver-side unitary V.
struct ExtractionTarget {
  int i = 0;
  int j = 0;
  bool from_v = false;
  MultiIndex pattern;  // over the receiver slots
};

/// Everything needed to run one matrix operation: sender states, unitary
/// constraints, receiver layout, extraction indices, and decode constants.
struct ProtocolPlan {
  Operation op;
  SystemLayout layout;
  std::vector<SenderState> senders;
  PartialUnitarySpec w_spec;
  std::optional<PartialUnitarySpec> v_spec;  // linsolve only
  std::vector<ExtractionTarget> extraction;
  Complex decode_constant{0.0, 0.0};  // α, β, ωλ, γ, or μ
  Complex det_constant{0.0, 0.0};     // γ̂ for inverse/linsolve
  ScaleRecord scales;
  int result_rows = 0;
  int result_cols = 0;
  double lambda = 0.0;
  double sigma = 0.0;
};

inline constexpr double kDefaultLambda = 0.5;
inline constexpr double kDefaultSigma = 0.35355339059327373;  // 1/(2√2)

ProtocolPlan plan_matvec(const Matrix& a, const Vector& v, const ScalePolicy& policy = {});
ProtocolPlan plan_matmul(const Matrix& a, const Matrix& b, const ScalePolicy& policy = {});
ProtocolPlan plan_matsum(const Matrix& c, const Matrix& d, double lambda = kDefaultLambda,
                         const ScalePolicy& policy = {});
ProtocolPlan plan_determinant(const Matrix& e, const ScalePolicy& policy = {});
ProtocolPlan plan_inverse(const Matrix& e, double sigma = kDefaultSigma,
                          const ScalePolicy& policy = {});
ProtocolPlan plan_linsolve(const Matrix& e, const Vector& b, double sigma = kDefaultSigma,
                           const ScalePolicy& policy = {}, bool normalize_b = false);

using ExtractionValues = std::map<std::pair<int, int>, Complex>;

/// Divide extracted coherence elements by the decode constant, arrange them
/// into the output shape, and reverse the recorded scaling.
Matrix decode(const ProtocolPlan& plan, const ExtractionValues& extracted);

/// Receiver-space pattern with ones at `slots`.
MultiIndex receiver_pattern(int slots_total, const std::vector<int>& ones);

/// Inverse-protocol receiver patterns over 2n slots: first-column bits all 1
/// except sender i's, aux bits all 0 except sender j's. i = j = 0 gives the
/// determinant pattern 1010…10.
MultiIndex inverse_receiver_pattern(int n, int i, int j);

}  // namespace senrec
