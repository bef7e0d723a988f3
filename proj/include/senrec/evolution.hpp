// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "senrec/protocols.hpp"

namespace senrec {

/// Hermitian trace-1 density matrix over the receiver qubits, indexed by the
/// receiver pattern read as a binary number (slot 0 most significant).
struct ReceiverDensity {
  Eigen::MatrixXcd matrix;
  int num_qubits = 0;
  int coherence_order = 0;  // sender count of the producing plan

  double trace_error() const;
  double hermiticity_defect() const;
  double min_eigenvalue() const;
};

struct CoherenceElement {
  MultiIndex row;  // receiver pattern with excitation = coherence order
  Complex value;   // ρ^(R) element against the receiver vacuum
};

enum class Engine { dense, sector };

struct EngineOptions {
  int dense_qubit_cap = 20;
  /// Shuffles every completion's candidate order; extraction values must not
  /// depend on it.
  std::optional<std::uint64_t> completion_seed = {};
};

/// Full-space pipeline: build the joint state, complete W per sector, apply,
/// and partial-trace down to the receiver.
ReceiverDensity evolve_dense(const ProtocolPlan& plan, const EngineOptions& options = {});

/// Same pipeline but with a caller-supplied W (must cover the plan's
/// constraints; use BlockUnitary::set_block with the plan's w_spec).
ReceiverDensity evolve_dense_with_unitary(const ProtocolPlan& plan, const BlockUnitary& w,
                                          const EngineOptions& options = {});

/// ρ^(R)_{a;b} = Σ_x ⟨x,a|ψ⟩⟨ψ|x,b⟩ over non-receiver configurations x.
ReceiverDensity partial_trace(const Eigen::VectorXcd& psi, const SystemLayout& layout,
                              int coherence_order = 0);

/// Read coherence elements ρ^(R)[pattern][0]; patterns must sit in the
/// (−coherence_order) sector.
std::vector<CoherenceElement> extract(const ReceiverDensity& receiver,
                                      const std::vector<MultiIndex>& patterns);

/// Sector-restricted fast path: extraction values are the constrained-row
/// amplitudes of W|ψ⟩ times conj(ψ(0)); the full space is never materialized.
/// Returns values in plan.extraction order.
std::vector<CoherenceElement> evolve_sector(const ProtocolPlan& plan);

/// Conjugate the receiver density by the completed V (linsolve).
ReceiverDensity apply_receiver_unitary(const ReceiverDensity& receiver,
                                       const PartialUnitarySpec& v_spec,
                                       const EngineOptions& options = {});

/// Extraction values for every plan label on the chosen engine. The dense
/// run also returns the receiver density (and the post-V density when the
/// plan carries one).
struct RunResult {
  ExtractionValues values;
  std::optional<ReceiverDensity> receiver;
  std::optional<ReceiverDensity> post_v;
};

RunResult run_plan(const ProtocolPlan& plan, Engine engine, const EngineOptions& options = {});

}  // namespace senrec
