// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "senrec/evolution.hpp"

#include <cmath>

namespace senrec {

namespace {

Eigen::VectorXcd dense_state(const JointState& state) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << state.num_qubits());
  for (const auto& [idx, amp] : state.amplitudes()) {
    psi(static_cast<Eigen::Index>(idx.word())) = amp;
  }
  return psi;
}

}  // namespace

double ReceiverDensity::trace_error() const { return std::abs(matrix.trace() - Complex{1.0, 0.0}); }

double ReceiverDensity::hermiticity_defect() const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

double ReceiverDensity::min_eigenvalue() const {
  const Eigen::MatrixXcd sym = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

ReceiverDensity partial_trace(const Eigen::VectorXcd& psi, const SystemLayout& layout,
                              int coherence_order) {
  const int total = layout.total_qubits();
  if (psi.size() != (Eigen::Index{1} << total)) {
    throw std::invalid_argument("partial_trace: state dimension mismatch");
  }
  const int r = layout.receiver_slots();
  std::vector<int> environment;
  for (int q = 0; q < total; ++q) {
    if (!layout.is_receiver(q)) environment.push_back(q);
  }
  const int env_bits = static_cast<int>(environment.size());

  // Word masks: receiver slot k / environment bit t -> position in the
  // global word (qubit 0 is the most significant bit).
  const auto qubit_mask = [total](int qubit) {
    return std::uint64_t{1} << (total - 1 - qubit);
  };
  std::vector<std::uint64_t> receiver_words(std::size_t{1} << r, 0);
  for (std::uint64_t a = 0; a < receiver_words.size(); ++a) {
    std::uint64_t w = 0;
    for (int k = 0; k < r; ++k) {
      if ((a >> (r - 1 - k)) & 1u) w |= qubit_mask(layout.receiver_qubits()[static_cast<std::size_t>(k)]);
    }
    receiver_words[a] = w;
  }

  const auto dim = Eigen::Index{1} << r;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::VectorXcd slice(dim);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << env_bits); ++x) {
    std::uint64_t base = 0;
    for (int t = 0; t < env_bits; ++t) {
      if ((x >> t) & 1u) base |= qubit_mask(environment[static_cast<std::size_t>(t)]);
    }
    for (Eigen::Index a = 0; a < dim; ++a) {
      slice(a) = psi(static_cast<Eigen::Index>(base | receiver_words[static_cast<std::uint64_t>(a)]));
    }
    rho.noalias() += slice * slice.adjoint();
  }
  return ReceiverDensity{std::move(rho), r, coherence_order};
}

ReceiverDensity evolve_dense_with_unitary(const ProtocolPlan& plan, const BlockUnitary& w,
                                          const EngineOptions& options) {
  const int total = plan.layout.total_qubits();
  if (total > options.dense_qubit_cap) {
    throw DenseCapExceeded("evolve_dense: register exceeds the dense cap; use the sector engine");
  }
  if (w.num_qubits() != total) {
    throw std::invalid_argument("evolve_dense: unitary register size mismatch");
  }
  const JointState joint = tensor_product(plan.senders, plan.layout);
  const Eigen::VectorXcd evolved = w.apply(dense_state(joint));
  return partial_trace(evolved, plan.layout, plan.layout.num_senders());
}

ReceiverDensity evolve_dense(const ProtocolPlan& plan, const EngineOptions& options) {
  const int total = plan.layout.total_qubits();
  if (total > options.dense_qubit_cap) {
    throw DenseCapExceeded("evolve_dense: register exceeds the dense cap; use the sector engine");
  }
  return evolve_dense_with_unitary(plan, BlockUnitary::from_spec(plan.w_spec, options.completion_seed),
                                   options);
}

std::vector<CoherenceElement> extract(const ReceiverDensity& receiver,
                                      const std::vector<MultiIndex>& patterns) {
  std::vector<CoherenceElement> out;
  out.reserve(patterns.size());
  for (const auto& pattern : patterns) {
    if (pattern.size() != receiver.num_qubits) {
      throw std::invalid_argument("extract: pattern size mismatch");
    }
    if (pattern.excitations() != receiver.coherence_order) {
      throw std::invalid_argument("extract: pattern excitation count != coherence order");
    }
    out.push_back({pattern, receiver.matrix(static_cast<Eigen::Index>(pattern.word()), 0)});
  }
  return out;
}

std::vector<CoherenceElement> evolve_sector(const ProtocolPlan& plan) {
  const JointState joint = tensor_product(plan.senders, plan.layout);
  const auto row_values = apply_constrained_rows(plan.w_spec, joint);
  const Complex vacuum_conj = std::conj(joint.amplitude(MultiIndex(joint.num_qubits(), 0)));

  const auto w_value = [&](const MultiIndex& receiver_pattern) {
    const auto it = row_values.find(plan.layout.embed_receiver(receiver_pattern));
    if (it == row_values.end()) {
      throw std::logic_error("evolve_sector: extraction pattern has no constrained row");
    }
    return it->second;
  };

  std::vector<CoherenceElement> out;
  out.reserve(plan.extraction.size());
  for (const auto& target : plan.extraction) {
    if (!target.from_v) {
      out.push_back({target.pattern, w_value(target.pattern) * vacuum_conj});
      continue;
    }
    // Post-V element: row L of V is fully specified, and V's vacuum block is
    // the scalar 1, so ξ_{L;0} = Σ_c V_{L;c} ρ_{c;0}.
    if (!plan.v_spec) throw std::logic_error("evolve_sector: plan has no receiver unitary");
    const RowConstraint* row = plan.v_spec->find_row(target.pattern);
    if (row == nullptr) throw std::logic_error("evolve_sector: V row not constrained");
    Complex acc{0.0, 0.0};
    for (const auto& [col, coeff] : row->entries) acc += coeff * w_value(col) * vacuum_conj;
    out.push_back({target.pattern, acc});
  }
  return out;
}

ReceiverDensity apply_receiver_unitary(const ReceiverDensity& receiver,
                                       const PartialUnitarySpec& v_spec,
                                       const EngineOptions& options) {
  if (v_spec.total_qubits() != receiver.num_qubits) {
    throw std::invalid_argument("apply_receiver_unitary: register size mismatch");
  }
  if (receiver.num_qubits > 16) {
    throw DenseCapExceeded("apply_receiver_unitary: receiver too large to densify");
  }
  const BlockUnitary v = BlockUnitary::from_spec(v_spec, options.completion_seed);
  const auto dim = Eigen::Index{1} << receiver.num_qubits;
  // Sectors without a block act as the identity, which the identity start
  // already provides; block diagonals overwrite their own entries.
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& [sector, block] : v.blocks()) {
    const auto basis = enumerate_sector(receiver.num_qubits, sector);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        full(static_cast<Eigen::Index>(basis[i].word()), static_cast<Eigen::Index>(basis[j].word())) =
            block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  Eigen::MatrixXcd xi = full * receiver.matrix * full.adjoint();
  return ReceiverDensity{std::move(xi), receiver.num_qubits, receiver.coherence_order};
}

RunResult run_plan(const ProtocolPlan& plan, Engine engine, const EngineOptions& options) {
  RunResult result;
  if (engine == Engine::sector) {
    const auto elements = evolve_sector(plan);
    for (std::size_t t = 0; t < plan.extraction.size(); ++t) {
      result.values[{plan.extraction[t].i, plan.extraction[t].j}] = elements[t].value;
    }
    return result;
  }

  result.receiver = evolve_dense(plan, options);
  if (plan.v_spec) {
    result.post_v = apply_receiver_unitary(*result.receiver, *plan.v_spec, options);
  }
  for (const auto& target : plan.extraction) {
    const ReceiverDensity& source = target.from_v ? *result.post_v : *result.receiver;
    result.values[{target.i, target.j}] =
        source.matrix(static_cast<Eigen::Index>(target.pattern.word()), 0);
  }
  return result;
}

}  // namespace senrec
