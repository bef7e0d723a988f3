// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "senrec/unitary_forge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace senrec {

namespace {

constexpr double kResidualTol = 1e-10;   // Gram-Schmidt candidate rejection
constexpr double kUnitarityTol = 1e-12;  // block audit

Complex sparse_inner(const RowConstraint& a, const RowConstraint& b) {
  // ⟨a, b⟩ = Σ conj(a_c) b_c over the intersection of supports.
  Complex acc{0.0, 0.0};
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      acc += std::conj(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return acc;
}

}  // namespace

const RowConstraint* PartialUnitarySpec::find_row(const MultiIndex& row) const {
  for (const auto& c : constraints_) {
    if (c.row == row) return &c;
  }
  return nullptr;
}

std::vector<int> PartialUnitarySpec::constrained_sectors() const {
  std::vector<int> sectors;
  for (const auto& c : constraints_) {
    if (std::find(sectors.begin(), sectors.end(), c.sector) == sectors.end()) {
      sectors.push_back(c.sector);
    }
  }
  std::sort(sectors.begin(), sectors.end());
  return sectors;
}

void add_row_constraint(PartialUnitarySpec& spec, const MultiIndex& row,
                        std::vector<std::pair<MultiIndex, Complex>> entries) {
  if (row.size() != spec.total_qubits_) {
    throw std::invalid_argument("add_row_constraint: row size mismatch");
  }
  if (spec.find_row(row) != nullptr) {
    throw std::invalid_argument("add_row_constraint: row already constrained");
  }
  const int sector = row.excitations();
  for (const auto& [col, value] : entries) {
    if (col.size() != spec.total_qubits_ || col.excitations() != sector) {
      throw std::invalid_argument("add_row_constraint: entry outside the row's sector");
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i - 1].first == entries[i].first) {
      throw std::invalid_argument("add_row_constraint: duplicate column in row");
    }
  }
  spec.constraints_.push_back(RowConstraint{row, std::move(entries), sector});
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  os << (passed ? "pass" : "FAIL") << " (tolerance " << tolerance << ")\n";
  for (const auto& s : sectors) {
    os << "  sector " << s.sector << ": " << s.rows << " rows, max |norm-1| = " << s.max_norm_error
       << ", max |<ri,rj>| = " << s.max_cross_inner << "\n";
  }
  return os.str();
}

ValidationReport validate(const PartialUnitarySpec& spec, double tolerance) {
  ValidationReport report;
  report.tolerance = tolerance;
  for (int sector : spec.constrained_sectors()) {
    SectorValidation sv;
    sv.sector = sector;
    std::vector<const RowConstraint*> rows;
    for (const auto& c : spec.constraints()) {
      if (c.sector == sector) rows.push_back(&c);
    }
    sv.rows = static_cast<int>(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double n = std::sqrt(std::abs(sparse_inner(*rows[i], *rows[i])));
      sv.max_norm_error = std::max(sv.max_norm_error, std::abs(n - 1.0));
      for (std::size_t j = i + 1; j < rows.size(); ++j) {
        sv.max_cross_inner = std::max(sv.max_cross_inner, std::abs(sparse_inner(*rows[i], *rows[j])));
      }
    }
    if (sv.max_norm_error > tolerance || sv.max_cross_inner > tolerance) report.passed = false;
    report.sectors.push_back(sv);
  }
  return report;
}

Eigen::MatrixXcd complete_sector(const PartialUnitarySpec& spec, int sector,
                                 const std::vector<int>& candidate_order) {
  const auto report = validate(spec);
  if (!report.passed) {
    throw std::invalid_argument("complete_sector: constraint validation failed\n" + report.str());
  }
  const auto basis = enumerate_sector(spec.total_qubits(), sector);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  if (dim > 1 << 14) throw std::length_error("complete_sector: sector too large to densify");

  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<bool> row_taken(static_cast<std::size_t>(dim), false);
  std::vector<Eigen::VectorXcd> ortho;  // rows fixed so far, as unit vectors

  for (const auto& c : spec.constraints()) {
    if (c.sector != sector) continue;
    const auto r = static_cast<Eigen::Index>(sector_rank(c.row));
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    for (const auto& [col, value] : c.entries) {
      v(static_cast<Eigen::Index>(sector_rank(col))) = value;
    }
    block.row(r) = v.transpose();
    row_taken[static_cast<std::size_t>(r)] = true;
    ortho.push_back(std::move(v));
  }

  std::vector<int> order = candidate_order;
  if (order.empty()) {
    order.resize(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), 0);
  }
  if (static_cast<Eigen::Index>(order.size()) != dim) {
    throw std::invalid_argument("complete_sector: candidate order size mismatch");
  }

  Eigen::Index next_row = 0;
  for (int candidate : order) {
    if (std::count(row_taken.begin(), row_taken.end(), true) == static_cast<long>(dim)) break;
    Eigen::VectorXcd v = Eigen::VectorXcd::Unit(dim, candidate);
    for (int pass = 0; pass < 2; ++pass) {  // MGS with one re-orthogonalization sweep
      for (const auto& o : ortho) v -= o * o.dot(v);
    }
    const double norm = v.norm();
    if (norm < kResidualTol) continue;
    v /= norm;
    while (row_taken[static_cast<std::size_t>(next_row)]) ++next_row;
    block.row(next_row) = v.transpose();
    row_taken[static_cast<std::size_t>(next_row)] = true;
    ortho.push_back(std::move(v));
  }
  if (std::count(row_taken.begin(), row_taken.end(), true) != static_cast<long>(dim)) {
    throw std::runtime_error("complete_sector: could not span the sector");
  }
  return block;
}

std::map<MultiIndex, Complex> apply_constrained_rows(const PartialUnitarySpec& spec,
                                                     const JointState& state) {
  const auto report = validate(spec);
  if (!report.passed) {
    throw std::invalid_argument("apply_constrained_rows: constraint validation failed\n" + report.str());
  }
  std::map<MultiIndex, Complex> values;
  for (const auto& c : spec.constraints()) {
    Complex acc{0.0, 0.0};
    for (const auto& [col, value] : c.entries) acc += value * state.amplitude(col);
    values.emplace(c.row, acc);
  }
  return values;
}

std::vector<int> shuffled_candidate_order(int size, std::uint64_t seed) {
  std::vector<int> order(static_cast<std::size_t>(size));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

BlockUnitary BlockUnitary::from_spec(const PartialUnitarySpec& spec,
                                     std::optional<std::uint64_t> completion_seed) {
  BlockUnitary op(spec.total_qubits());
  for (int sector : spec.constrained_sectors()) {
    std::vector<int> order;
    if (completion_seed) {
      const auto dim = static_cast<int>(binomial(spec.total_qubits(), sector));
      order = shuffled_candidate_order(dim, *completion_seed + static_cast<std::uint64_t>(sector));
    }
    op.set_block(sector, complete_sector(spec, sector, order));
  }
  return op;
}

const Eigen::MatrixXcd* BlockUnitary::block(int sector) const {
  const auto it = blocks_.find(sector);
  return it == blocks_.end() ? nullptr : &it->second;
}

void BlockUnitary::set_block(int sector, Eigen::MatrixXcd block, const PartialUnitarySpec* spec) {
  const auto expected = static_cast<Eigen::Index>(binomial(num_qubits_, sector));
  if (block.rows() != expected || block.cols() != expected) {
    throw std::invalid_argument("set_block: block dimension does not match the sector");
  }
  if (unitarity_defect(block) > kUnitarityTol) {
    throw std::invalid_argument("set_block: block is not unitary");
  }
  if (spec != nullptr) {
    for (const auto& c : spec->constraints()) {
      if (c.sector != sector) continue;
      const auto r = static_cast<Eigen::Index>(sector_rank(c.row));
      Eigen::VectorXcd expected_row = Eigen::VectorXcd::Zero(block.cols());
      for (const auto& [col, value] : c.entries) {
        expected_row(static_cast<Eigen::Index>(sector_rank(col))) = value;
      }
      if ((block.row(r).transpose() - expected_row).cwiseAbs().maxCoeff() > kUnitarityTol) {
        throw std::invalid_argument("set_block: block does not reproduce a constrained row");
      }
    }
  }
  blocks_[sector] = std::move(block);
}

Eigen::VectorXcd BlockUnitary::apply(const Eigen::VectorXcd& psi) const {
  if (psi.size() != (Eigen::Index{1} << num_qubits_)) {
    throw std::invalid_argument("BlockUnitary::apply: state dimension mismatch");
  }
  Eigen::VectorXcd out = psi;  // identity on sectors without a block
  for (const auto& [sector, block] : blocks_) {
    const auto basis = enumerate_sector(num_qubits_, sector);
    Eigen::VectorXcd sub(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      sub(static_cast<Eigen::Index>(i)) = psi(static_cast<Eigen::Index>(basis[i].word()));
    }
    const Eigen::VectorXcd mapped = block * sub;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      out(static_cast<Eigen::Index>(basis[i].word())) = mapped(static_cast<Eigen::Index>(i));
    }
  }
  return out;
}

double BlockUnitary::max_unitarity_defect() const {
  double defect = 0.0;
  for (const auto& [sector, block] : blocks_) defect = std::max(defect, unitarity_defect(block));
  return defect;
}

double unitarity_defect(const Eigen::MatrixXcd& block) {
  const Eigen::MatrixXcd gram = block.adjoint() * block;
  return (gram - Eigen::MatrixXcd::Identity(block.rows(), block.cols())).cwiseAbs().maxCoeff();
}

std::string sector_block_to_json(const Eigen::MatrixXcd& block) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index r = 0; r < block.rows(); ++r) {
    for (Eigen::Index c = 0; c < block.cols(); ++c) {
      data.push_back({block(r, c).real(), block(r, c).imag()});
    }
  }
  nlohmann::json j{{"rows", block.rows()}, {"cols", block.cols()}, {"data", std::move(data)}};
  return j.dump(2);
}

}  // namespace senrec
