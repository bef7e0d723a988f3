// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "senrec/types.hpp"

namespace senrec {

/// Classical bitstring over a register of qubits. Qubit 0 is the leftmost /
/// most significant position, so sorting by `word()` sorts bitstrings read
/// as binary numbers.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(int num_qubits, std::uint64_t word);

  static MultiIndex from_string(std::string_view bits);

  int size() const { return size_; }
  std::uint64_t word() const { return word_; }
  int bit(int qubit) const { return static_cast<int>((word_ >> (size_ - 1 - qubit)) & 1u); }
  MultiIndex with_bit(int qubit, int value) const;
  int excitations() const;
  std::string str() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    return a.word_ <=> b.word_;
  }

 private:
  int size_ = 0;
  std::uint64_t word_ = 0;
};

std::uint64_t binomial(int n, int k);

/// All `num_qubits`-bit strings with exactly `excitations` ones, ascending by
/// binary value. Deterministic; C(num_qubits, excitations) elements.
std::vector<MultiIndex> enumerate_sector(int num_qubits, int excitations);

/// Position of `index` within enumerate_sector(size, excitations(index)).
std::int64_t sector_rank(const MultiIndex& index);

/// Qubit bookkeeping for a multi-sender register: which global positions each
/// sender's rows occupy and which positions form the receiver, in slot order.
class SystemLayout {
 public:
  SystemLayout(std::vector<std::vector<int>> sender_rows, std::vector<int> receiver_qubits);

  int num_senders() const { return static_cast<int>(rows_.size()); }
  int total_qubits() const { return total_; }
  int sender_qubits(int sender) const;
  int sender_offset(int sender) const { return offsets_[sender]; }
  /// Global position of a qubit addressed by (sender, row, slot-within-row).
  int position(int sender, int row, int slot) const;
  const std::vector<std::vector<int>>& sender_rows() const { return rows_; }

  const std::vector<int>& receiver_qubits() const { return receiver_; }
  int receiver_slots() const { return static_cast<int>(receiver_.size()); }
  bool is_receiver(int qubit) const;

  /// Receiver-space pattern -> global pattern (zeros on non-receiver qubits).
  MultiIndex embed_receiver(const MultiIndex& pattern) const;
  /// Project a global pattern onto the receiver slots.
  MultiIndex receiver_part(const MultiIndex& global) const;

 private:
  std::vector<std::vector<int>> rows_;
  std::vector<int> offsets_;
  std::vector<int> receiver_;
  int total_ = 0;
};

/// Single-excitation pure sender state: a vacuum amplitude plus one amplitude
/// per excited qubit position.
class SenderState {
 public:
  SenderState(int num_qubits, Complex vacuum, std::vector<std::pair<int, Complex>> excited);

  int num_qubits() const { return num_qubits_; }
  Complex vacuum() const { return vacuum_; }
  const std::vector<std::pair<int, Complex>>& excited() const { return excited_; }
  /// Amplitude of a local basis state (vacuum, single excitation, or 0).
  Complex amplitude(const MultiIndex& local) const;
  double norm() const;

 private:
  int num_qubits_;
  Complex vacuum_;
  std::vector<std::pair<int, Complex>> excited_;  // (position, amplitude), position ascending
};

/// Encode matrix rows (and fixed extras such as λ or σ) as excitation
/// amplitudes. Extras claim their positions first; row entries fill the
/// remaining positions in row-major order. The vacuum amplitude is
/// +sqrt(1 − Σ|payload|²), which must stay above 1e−12.
SenderState encode_sender(const std::vector<RowVector>& rows,
                          const std::vector<std::pair<int, Complex>>& extras = {});

/// Sparse pure state over the whole register, keyed by global MultiIndex.
class JointState {
 public:
  JointState(int num_qubits, std::map<MultiIndex, Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  const std::map<MultiIndex, Complex>& amplitudes() const { return amps_; }
  Complex amplitude(const MultiIndex& index) const;
  double norm() const;
  int max_excitation() const;

 private:
  int num_qubits_;
  std::map<MultiIndex, Complex> amps_;
};

/// Product state of per-sender states placed at the layout's sender offsets.
JointState tensor_product(const std::vector<SenderState>& states, const SystemLayout& layout);

}  // namespace senrec
