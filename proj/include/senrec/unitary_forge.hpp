// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "senrec/excitation_space.hpp"
#include "senrec/types.hpp"

namespace senrec {

/// One fully specified unit row of an excitation-conserving unitary.
/// Columns not listed in `entries` are exactly zero, so a completion can
/// never leak other amplitudes into this row.
struct RowConstraint {
  MultiIndex row;
  std::vector<std::pair<MultiIndex, Complex>> entries;  // sorted by column
  int sector = 0;
};

/// Partially specified block-diagonal unitary: a set of constrained rows per
/// excitation sector. The 0-excitation block is the scalar 1; unconstrained
/// sectors complete to the identity.
class PartialUnitarySpec {
 public:
  explicit PartialUnitarySpec(int total_qubits) : total_qubits_(total_qubits) {}

  int total_qubits() const { return total_qubits_; }
  bool zero_sector_fixed() const { return zero_sector_fixed_; }
  const std::vector<RowConstraint>& constraints() const { return constraints_; }
  const RowConstraint* find_row(const MultiIndex& row) const;
  std::vector<int> constrained_sectors() const;

  friend void add_row_constraint(PartialUnitarySpec& spec, const MultiIndex& row,
                                 std::vector<std::pair<MultiIndex, Complex>> entries);

 private:
  int total_qubits_;
  bool zero_sector_fixed_ = true;
  std::vector<RowConstraint> constraints_;
};

/// Register a fully specified row. Rejects duplicate rows and entries whose
/// excitation count differs from the row's.
void add_row_constraint(PartialUnitarySpec& spec, const MultiIndex& row,
                        std::vector<std::pair<MultiIndex, Complex>> entries);

struct SectorValidation {
  int sector = 0;
  int rows = 0;
  double max_norm_error = 0.0;   // max |‖r‖ − 1|
  double max_cross_inner = 0.0;  // max |⟨ri, rj⟩|, i ≠ j
};

struct ValidationReport {
  std::vector<SectorValidation> sectors;
  double tolerance = 1e-10;
  bool passed = true;
  std::string str() const;
};

/// Per-sector row norms and pairwise inner products; passes iff all norms are
/// 1 and all cross inner products 0 within `tolerance`.
ValidationReport validate(const PartialUnitarySpec& spec, double tolerance = 1e-10);

/// Deterministically complete one sector to a dense unitary: constrained rows
/// are copied verbatim; the remaining rows come from modified Gram-Schmidt
/// over the sector's standard basis vectors taken in `candidate_order`
/// (enumeration order when empty), skipping candidates whose residual norm
/// falls below 1e−10, and are assigned to unconstrained row indices in
/// enumeration order.
Eigen::MatrixXcd complete_sector(const PartialUnitarySpec& spec, int sector,
                                 const std::vector<int>& candidate_order = {});

/// Deterministic shuffled candidate order, for checking that completions are
/// interchangeable outside the constrained rows.
std::vector<int> shuffled_candidate_order(int size, std::uint64_t seed);

/// Amplitudes of W|ψ⟩ at the constrained rows only — no completion involved.
std::map<MultiIndex, Complex> apply_constrained_rows(const PartialUnitarySpec& spec,
                                                     const JointState& state);

/// Excitation-conserving unitary assembled from per-sector blocks. Sectors
/// without a stored block act as the identity.
class BlockUnitary {
 public:
  explicit BlockUnitary(int num_qubits) : num_qubits_(num_qubits) {}

  /// Complete every constrained sector of `spec`. A completion seed shuffles
  /// each sector's candidate order (extraction must not care).
  static BlockUnitary from_spec(const PartialUnitarySpec& spec,
                                std::optional<std::uint64_t> completion_seed = {});

  int num_qubits() const { return num_qubits_; }
  const std::map<int, Eigen::MatrixXcd>& blocks() const { return blocks_; }
  const Eigen::MatrixXcd* block(int sector) const;

  /// Install an explicit sector block. Checks unitarity, and when `spec` is
  /// given, that the block's rows reproduce every constraint in that sector.
  void set_block(int sector, Eigen::MatrixXcd block,
                 const PartialUnitarySpec* spec = nullptr);

  /// Apply to a dense state vector over the full 2^n space.
  Eigen::VectorXcd apply(const Eigen::VectorXcd& psi) const;

  /// max over stored blocks of ‖B†B − I‖_max.
  double max_unitarity_defect() const;

 private:
  int num_qubits_;
  std::map<int, Eigen::MatrixXcd> blocks_;
};

double unitarity_defect(const Eigen::MatrixXcd& block);

/// Debug dump of a dense complex block: {"rows", "cols", "data": [[re,im]...]}.
std::string sector_block_to_json(const Eigen::MatrixXcd& block);

}  // namespace senrec
