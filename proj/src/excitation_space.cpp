// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "senrec/excitation_space.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>

namespace senrec {

namespace {

constexpr int kMaxQubits = 62;  // keeps C(n,k) and bit shifts inside uint64
constexpr double kNormTol = 1e-12;

}  // namespace

MultiIndex::MultiIndex(int num_qubits, std::uint64_t word) : size_(num_qubits), word_(word) {
  if (num_qubits < 0 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("MultiIndex: qubit count out of range");
  }
  if (num_qubits < kMaxQubits && (word >> num_qubits) != 0) {
    throw std::invalid_argument("MultiIndex: word has bits beyond the register");
  }
}

MultiIndex MultiIndex::from_string(std::string_view bits) {
  std::uint64_t w = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("MultiIndex: bits must be 0/1");
    w = (w << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return MultiIndex(static_cast<int>(bits.size()), w);
}

MultiIndex MultiIndex::with_bit(int qubit, int value) const {
  const std::uint64_t mask = std::uint64_t{1} << (size_ - 1 - qubit);
  return MultiIndex(size_, value ? (word_ | mask) : (word_ & ~mask));
}

int MultiIndex::excitations() const { return std::popcount(word_); }

std::string MultiIndex::str() const {
  std::string s(static_cast<std::size_t>(size_), '0');
  for (int q = 0; q < size_; ++q) s[static_cast<std::size_t>(q)] = bit(q) ? '1' : '0';
  return s;
}

std::uint64_t binomial(int n, int k) {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kMaxQubits + 1>, kMaxQubits + 1> t{};
    for (int i = 0; i <= kMaxQubits; ++i) {
      t[i][0] = 1;
      for (int j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
    }
    return t;
  }();
  if (n < 0 || n > kMaxQubits) throw std::invalid_argument("binomial: n out of range");
  if (k < 0 || k > n) return 0;
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

std::vector<MultiIndex> enumerate_sector(int num_qubits, int excitations) {
  if (num_qubits < 0 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("enumerate_sector: qubit count out of range");
  }
  if (excitations < 0 || excitations > num_qubits) {
    throw std::invalid_argument("enumerate_sector: excitation count out of range");
  }
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(binomial(num_qubits, excitations)));
  if (excitations == 0) {
    out.emplace_back(num_qubits, 0);
    return out;
  }
  const std::uint64_t limit = (num_qubits == kMaxQubits)
                                  ? ~std::uint64_t{0}
                                  : (std::uint64_t{1} << num_qubits) - 1;
  // Gosper's hack walks same-popcount words in ascending order.
  std::uint64_t w = (std::uint64_t{1} << excitations) - 1;
  while (true) {
    out.emplace_back(num_qubits, w);
    const std::uint64_t c = w & (~w + 1);
    const std::uint64_t r = w + c;
    if (r > limit || r < w) break;
    w = (((r ^ w) >> 2) / c) | r;
    if (w > limit) break;
  }
  return out;
}

std::int64_t sector_rank(const MultiIndex& index) {
  // Count same-sector words below `index`: scanning from the most significant
  // bit, every 1 admits C(bits_right, ones_left) smaller words with a 0 there.
  const int n = index.size();
  int remaining = index.excitations();
  std::int64_t rank = 0;
  for (int q = 0; q < n && remaining > 0; ++q) {
    if (index.bit(q)) {
      rank += static_cast<std::int64_t>(binomial(n - q - 1, remaining));
      --remaining;
    }
  }
  return rank;
}

SystemLayout::SystemLayout(std::vector<std::vector<int>> sender_rows,
                           std::vector<int> receiver_qubits)
    : rows_(std::move(sender_rows)), receiver_(std::move(receiver_qubits)) {
  offsets_.reserve(rows_.size());
  for (const auto& rows : rows_) {
    offsets_.push_back(total_);
    for (int len : rows) {
      if (len <= 0) throw std::invalid_argument("SystemLayout: row length must be positive");
      total_ += len;
    }
  }
  if (total_ > 62) throw std::invalid_argument("SystemLayout: register too large");
  std::vector<bool> seen(static_cast<std::size_t>(total_), false);
  for (int q : receiver_) {
    if (q < 0 || q >= total_) throw std::invalid_argument("SystemLayout: receiver qubit out of range");
    if (seen[static_cast<std::size_t>(q)]) {
      throw std::invalid_argument("SystemLayout: duplicate receiver qubit");
    }
    seen[static_cast<std::size_t>(q)] = true;
  }
}

int SystemLayout::sender_qubits(int sender) const {
  const auto& rows = rows_.at(static_cast<std::size_t>(sender));
  return std::accumulate(rows.begin(), rows.end(), 0);
}

int SystemLayout::position(int sender, int row, int slot) const {
  const auto& rows = rows_.at(static_cast<std::size_t>(sender));
  if (row < 0 || row >= static_cast<int>(rows.size()) || slot < 0 || slot >= rows[static_cast<std::size_t>(row)]) {
    throw std::invalid_argument("SystemLayout: (row, slot) out of range");
  }
  int pos = offsets_[static_cast<std::size_t>(sender)];
  for (int r = 0; r < row; ++r) pos += rows[static_cast<std::size_t>(r)];
  return pos + slot;
}

bool SystemLayout::is_receiver(int qubit) const {
  return std::find(receiver_.begin(), receiver_.end(), qubit) != receiver_.end();
}

MultiIndex SystemLayout::embed_receiver(const MultiIndex& pattern) const {
  if (pattern.size() != receiver_slots()) {
    throw std::invalid_argument("embed_receiver: pattern size mismatch");
  }
  MultiIndex global(total_, 0);
  for (int slot = 0; slot < pattern.size(); ++slot) {
    if (pattern.bit(slot)) global = global.with_bit(receiver_[static_cast<std::size_t>(slot)], 1);
  }
  return global;
}

MultiIndex SystemLayout::receiver_part(const MultiIndex& global) const {
  MultiIndex pattern(receiver_slots(), 0);
  for (int slot = 0; slot < receiver_slots(); ++slot) {
    if (global.bit(receiver_[static_cast<std::size_t>(slot)])) pattern = pattern.with_bit(slot, 1);
  }
  return pattern;
}

SenderState::SenderState(int num_qubits, Complex vacuum,
                         std::vector<std::pair<int, Complex>> excited)
    : num_qubits_(num_qubits), vacuum_(vacuum), excited_(std::move(excited)) {
  std::sort(excited_.begin(), excited_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < excited_.size(); ++i) {
    const int pos = excited_[i].first;
    if (pos < 0 || pos >= num_qubits_) throw std::invalid_argument("SenderState: position out of range");
    if (i > 0 && excited_[i - 1].first == pos) {
      throw std::invalid_argument("SenderState: duplicate excited position");
    }
  }
  if (std::abs(vacuum_) == 0.0) throw NormalizationError("SenderState: vacuum amplitude is zero");
  if (std::abs(norm() - 1.0) > kNormTol) throw NormalizationError("SenderState: state not normalized");
}

Complex SenderState::amplitude(const MultiIndex& local) const {
  if (local.size() != num_qubits_) throw std::invalid_argument("SenderState: index size mismatch");
  const int exc = local.excitations();
  if (exc == 0) return vacuum_;
  if (exc > 1) return Complex{0.0, 0.0};
  for (const auto& [pos, amp] : excited_) {
    if (local.bit(pos)) return amp;
  }
  return Complex{0.0, 0.0};
}

double SenderState::norm() const {
  double sum = std::norm(vacuum_);
  for (const auto& [pos, amp] : excited_) sum += std::norm(amp);
  return std::sqrt(sum);
}

SenderState encode_sender(const std::vector<RowVector>& rows,
                          const std::vector<std::pair<int, Complex>>& extras) {
  int payload_size = 0;
  for (const auto& row : rows) payload_size += static_cast<int>(row.size());
  const int num_qubits = payload_size + static_cast<int>(extras.size());

  std::vector<bool> taken(static_cast<std::size_t>(num_qubits), false);
  std::vector<std::pair<int, Complex>> excited;
  double payload_norm2 = 0.0;
  for (const auto& [pos, amp] : extras) {
    if (pos < 0 || pos >= num_qubits) throw std::invalid_argument("encode_sender: extra position out of range");
    if (taken[static_cast<std::size_t>(pos)]) {
      throw std::invalid_argument("encode_sender: extra positions collide");
    }
    taken[static_cast<std::size_t>(pos)] = true;
    payload_norm2 += std::norm(amp);
    if (amp != Complex{0.0, 0.0}) excited.emplace_back(pos, amp);
  }
  int cursor = 0;
  for (const auto& row : rows) {
    for (int c = 0; c < row.size(); ++c) {
      while (taken[static_cast<std::size_t>(cursor)]) ++cursor;
      const Complex amp = row[c];
      payload_norm2 += std::norm(amp);
      if (amp != Complex{0.0, 0.0}) excited.emplace_back(cursor, amp);
      ++cursor;
    }
  }

  const double residual = 1.0 - payload_norm2;
  if (residual <= 0.0) {
    throw NormalizationError("encode_sender: payload norm exceeds 1; rescale the input");
  }
  if (residual < kNormTol) {
    throw NormalizationError("encode_sender: vacuum amplitude numerically degenerate");
  }
  return SenderState(num_qubits, Complex{std::sqrt(residual), 0.0}, std::move(excited));
}

JointState::JointState(int num_qubits, std::map<MultiIndex, Complex> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  for (const auto& [idx, amp] : amps_) {
    if (idx.size() != num_qubits_) throw std::invalid_argument("JointState: index size mismatch");
  }
}

Complex JointState::amplitude(const MultiIndex& index) const {
  const auto it = amps_.find(index);
  return it == amps_.end() ? Complex{0.0, 0.0} : it->second;
}

double JointState::norm() const {
  double sum = 0.0;
  for (const auto& [idx, amp] : amps_) sum += std::norm(amp);
  return std::sqrt(sum);
}

int JointState::max_excitation() const {
  int m = 0;
  for (const auto& [idx, amp] : amps_) m = std::max(m, idx.excitations());
  return m;
}

JointState tensor_product(const std::vector<SenderState>& states, const SystemLayout& layout) {
  if (static_cast<int>(states.size()) != layout.num_senders()) {
    throw std::invalid_argument("tensor_product: sender count mismatch");
  }
  const int total = layout.total_qubits();
  std::map<MultiIndex, Complex> amps;
  amps.emplace(MultiIndex(total, 0), Complex{1.0, 0.0});
  for (int s = 0; s < layout.num_senders(); ++s) {
    const SenderState& state = states[static_cast<std::size_t>(s)];
    if (state.num_qubits() != layout.sender_qubits(s)) {
      throw std::invalid_argument("tensor_product: sender qubit count mismatch");
    }
    const int offset = layout.sender_offset(s);
    std::map<MultiIndex, Complex> next;
    for (const auto& [idx, amp] : amps) {
      MultiIndex vac = idx;
      auto vamp = amp * state.vacuum();
      next.emplace(vac, vamp);
      for (const auto& [pos, a] : state.excited()) {
        next.emplace(idx.with_bit(offset + pos, 1), amp * a);
      }
    }
    amps = std::move(next);
  }
  return JointState(total, std::move(amps));
}

}  // namespace senrec
