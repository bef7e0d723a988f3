// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "senrec/excitation_space.hpp"

#include <bit>
#include <random>

#include <doctest.h>

using namespace senrec;

namespace {

// Independent enumeration oracle: filter all words by popcount, sort by value.
std::vector<std::uint64_t> brute_force_sector(int n, int k) {
  std::vector<std::uint64_t> words;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
    if (std::popcount(w) == k) words.push_back(w);
  }
  return words;  // ascending by construction
}

// Dense Kronecker product oracle for tensor_product checks.
Eigen::VectorXcd dense_sender(const SenderState& s) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << s.num_qubits());
  for (Eigen::Index w = 0; w < v.size(); ++w) {
    v(w) = s.amplitude(MultiIndex(s.num_qubits(), static_cast<std::uint64_t>(w)));
  }
  return v;
}

Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

}  // namespace

TEST_CASE("MultiIndex bit order and string round trip") {
  const auto idx = MultiIndex::from_string("0101");
  CHECK(idx.size() == 4);
  CHECK(idx.word() == 5);
  CHECK(idx.bit(0) == 0);
  CHECK(idx.bit(1) == 1);
  CHECK(idx.bit(3) == 1);
  CHECK(idx.excitations() == 2);
  CHECK(idx.str() == "0101");
  CHECK(idx.with_bit(0, 1).str() == "1101");
  CHECK_THROWS_AS(MultiIndex(3, 0b1000), std::invalid_argument);
}

TEST_CASE("enumerate_sector matches the listed two-excitation basis") {
  const auto basis = enumerate_sector(4, 2);
  REQUIRE(basis.size() == 6);
  const char* expected[] = {"0011", "0101", "0110", "1001", "1010", "1100"};
  for (int i = 0; i < 6; ++i) CHECK(basis[static_cast<std::size_t>(i)].str() == expected[i]);
}

TEST_CASE("enumerate_sector trivial and brute-force cases") {
  const auto zero = enumerate_sector(3, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].str() == "000");

  const auto six = enumerate_sector(6, 2);
  const auto oracle = brute_force_sector(6, 2);
  REQUIRE(six.size() == 15);
  REQUIRE(six.size() == oracle.size());
  for (std::size_t i = 0; i < six.size(); ++i) CHECK(six[i].word() == oracle[i]);
  CHECK(six.front().str() == "000011");
  CHECK(six.back().str() == "110000");

  CHECK_THROWS_AS(enumerate_sector(4, 5), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_sector(4, -1), std::invalid_argument);
}

TEST_CASE("sector_rank inverts enumeration") {
  CHECK(sector_rank(MultiIndex::from_string("0101")) == 1);
  CHECK(sector_rank(MultiIndex::from_string("1100")) == 5);
  CHECK(sector_rank(MultiIndex::from_string("000011")) == 0);

  for (int n : {1, 4, 7, 10}) {
    for (int k = 0; k <= n; ++k) {
      const auto basis = enumerate_sector(n, k);
      CHECK(basis.size() == binomial(n, k));
      for (std::size_t i = 0; i < basis.size(); ++i) {
        CHECK(sector_rank(basis[i]) == static_cast<std::int64_t>(i));
      }
    }
  }
}

TEST_CASE("encode_sender reproduces the determinant-example amplitudes") {
  RowVector row(2);
  row << Complex{0.75, 0.0}, Complex{0.25, 0.0};
  const auto s = encode_sender({row});
  CHECK(s.num_qubits() == 2);
  CHECK(s.vacuum().real() == doctest::Approx(std::sqrt(6.0) / 4.0).epsilon(1e-14));
  CHECK(s.vacuum().imag() == 0.0);
  CHECK(s.amplitude(MultiIndex::from_string("10")) == Complex{0.75, 0.0});
  CHECK(s.amplitude(MultiIndex::from_string("01")) == Complex{0.25, 0.0});
  CHECK(s.amplitude(MultiIndex::from_string("11")) == Complex{0.0, 0.0});
}

TEST_CASE("encode_sender zero payload and extras") {
  RowVector zero(2);
  zero << Complex{0.0, 0.0}, Complex{0.0, 0.0};
  const auto s = encode_sender({zero});
  CHECK(s.vacuum() == Complex{1.0, 0.0});
  CHECK(s.excited().empty());

  // Aux amplitude σ = 1/(2√2) on qubit 2 drops the vacuum to 1/2.
  RowVector row(2);
  row << Complex{0.75, 0.0}, Complex{0.25, 0.0};
  const double sigma = 1.0 / (2.0 * std::sqrt(2.0));
  const auto with_aux = encode_sender({row}, {{2, Complex{sigma, 0.0}}});
  CHECK(with_aux.num_qubits() == 3);
  CHECK(with_aux.vacuum().real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(with_aux.amplitude(MultiIndex::from_string("001")) == Complex{sigma, 0.0});
  CHECK(with_aux.amplitude(MultiIndex::from_string("100")) == Complex{0.75, 0.0});
}

TEST_CASE("encode_sender rejects oversized and degenerate payloads") {
  RowVector big(2);
  big << Complex{0.9, 0.0}, Complex{0.9, 0.0};
  CHECK_THROWS_AS(encode_sender({big}), NormalizationError);

  RowVector exact(1);
  exact << Complex{1.0, 0.0};
  CHECK_THROWS_AS(encode_sender({exact}), NormalizationError);
}

TEST_CASE("tensor_product reproduces the determinant-example joint amplitudes") {
  RowVector r1(2), r2(2);
  r1 << Complex{0.75, 0.0}, Complex{0.25, 0.0};
  r2 << Complex{0.25, 0.0}, Complex{0.75, 0.0};
  const SystemLayout layout({{2}, {2}}, {1, 3});
  const auto joint = tensor_product({encode_sender({r1}), encode_sender({r2})}, layout);
  CHECK(joint.amplitude(MultiIndex::from_string("1001")).real() == doctest::Approx(9.0 / 16.0));
  CHECK(joint.amplitude(MultiIndex::from_string("0000")).real() == doctest::Approx(3.0 / 8.0));
  CHECK(joint.amplitude(MultiIndex::from_string("0110")).real() == doctest::Approx(1.0 / 16.0));
  CHECK(joint.norm() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(joint.max_excitation() == 2);
}

TEST_CASE("tensor_product of one sender is the sender itself") {
  RowVector row(3);
  row << Complex{0.3, 0.1}, Complex{0.0, 0.2}, Complex{-0.4, 0.0};
  const auto s = encode_sender({row});
  const SystemLayout layout({{3}}, {2});
  const auto joint = tensor_product({s}, layout);
  for (std::uint64_t w = 0; w < 8; ++w) {
    const MultiIndex idx(3, w);
    CHECK(joint.amplitude(idx) == s.amplitude(idx));
  }
}

TEST_CASE("tensor_product matches a dense Kronecker oracle on random senders") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-0.4, 0.4);
  for (int trial = 0; trial < 20; ++trial) {
    RowVector r1(2), r2(2);
    r1 << Complex{dist(rng), dist(rng)}, Complex{dist(rng), dist(rng)};
    r2 << Complex{dist(rng), dist(rng)}, Complex{dist(rng), dist(rng)};
    const auto s1 = encode_sender({r1});
    const auto s2 = encode_sender({r2});
    const SystemLayout layout({{2}, {2}}, {1, 3});
    const auto joint = tensor_product({s1, s2}, layout);
    CHECK(joint.norm() == doctest::Approx(1.0).epsilon(1e-12));

    const auto dense = kron(dense_sender(s1), dense_sender(s2));
    for (std::uint64_t w = 0; w < 16; ++w) {
      const Complex got = joint.amplitude(MultiIndex(4, w));
      CHECK(std::abs(got - dense(static_cast<Eigen::Index>(w))) < 1e-14);
    }

    // Exactly one vacuum key whose amplitude is the product of vacuums.
    CHECK(std::abs(joint.amplitude(MultiIndex(4, 0)) - s1.vacuum() * s2.vacuum()) < 1e-14);
  }
}

TEST_CASE("tensor_product rejects layouts that do not match the senders") {
  RowVector row(2);
  row << Complex{0.3, 0.0}, Complex{0.4, 0.0};
  const auto s = encode_sender({row});
  const SystemLayout three_qubits({{3}}, {2});
  CHECK_THROWS_AS(tensor_product({s}, three_qubits), std::invalid_argument);
  const SystemLayout two_senders({{2}, {2}}, {1, 3});
  CHECK_THROWS_AS(tensor_product({s}, two_senders), std::invalid_argument);
}

TEST_CASE("layout bookkeeping round trips receiver patterns") {
  const SystemLayout layout({{2, 2}, {2}}, {1, 3, 5});
  CHECK(layout.total_qubits() == 6);
  CHECK(layout.sender_offset(1) == 4);
  CHECK(layout.position(0, 1, 1) == 3);
  CHECK(layout.is_receiver(3));
  CHECK(!layout.is_receiver(0));
  const auto pattern = MultiIndex::from_string("101");
  const auto global = layout.embed_receiver(pattern);
  CHECK(global.str() == "010001");
  CHECK(layout.receiver_part(global) == pattern);
  CHECK_THROWS_AS(SystemLayout({{2}}, {5}), std::invalid_argument);
  CHECK_THROWS_AS(SystemLayout({{2}}, {1, 1}), std::invalid_argument);
}
