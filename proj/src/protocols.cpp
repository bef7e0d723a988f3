// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "senrec/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace senrec {

namespace {

constexpr double kTiny = 1e-12;
constexpr double kUnitVectorTol = 1e-10;

/// Visit every permutation of `items` together with its parity relative to
/// the initial arrangement. Iterative Heap's algorithm: consecutive
/// permutations differ by one transposition, so the sign just alternates
/// with each swap.
template <typename Fn>
void for_each_permutation_signed(std::vector<int> items, Fn&& fn) {
  int sign = 1;
  fn(items, sign);
  if (items.size() < 2) return;
  std::vector<std::size_t> c(items.size(), 0);
  std::size_t i = 0;
  while (i < items.size()) {
    if (c[i] < i) {
      std::swap(items[i % 2 == 0 ? 0 : c[i]], items[i]);
      sign = -sign;
      fn(items, sign);
      ++c[i];
      i = 0;
    } else {
      c[i] = 0;
      ++i;
    }
  }
}

double auto_scale(double payload_norm2, double extras_norm2, const ScalePolicy& policy) {
  if (policy.mode == ScalePolicy::Mode::off) return 1.0;
  const double budget = 1.0 - policy.target_vacuum_floor - extras_norm2;
  if (budget <= 0.0) {
    throw NormalizationError("auto-scale: fixed amplitudes leave no room for the payload");
  }
  if (payload_norm2 <= budget) return 1.0;
  return std::sqrt(budget / payload_norm2);
}

MultiIndex global_pattern(const SystemLayout& layout, const std::vector<int>& positions) {
  MultiIndex idx(layout.total_qubits(), 0);
  for (int p : positions) idx = idx.with_bit(p, 1);
  return idx;
}

void check_extraction_order(const ProtocolPlan& plan) {
  const int n = plan.layout.num_senders();
  for (const auto& target : plan.extraction) {
    if (target.pattern.excitations() != n) {
      throw std::logic_error("extraction pattern excitation count != sender count");
    }
  }
  if (std::abs(plan.decode_constant) < kTiny) {
    throw NormalizationError("decode constant is numerically zero");
  }
}

}  // namespace

const char* operation_name(Operation op) {
  switch (op) {
    case Operation::matvec: return "matvec";
    case Operation::matmul: return "matmul";
    case Operation::matsum: return "sum";
    case Operation::determinant: return "det";
    case Operation::inverse: return "inv";
    case Operation::linsolve: return "solve";
  }
  return "?";
}

MultiIndex receiver_pattern(int slots_total, const std::vector<int>& ones) {
  MultiIndex p(slots_total, 0);
  for (int s : ones) p = p.with_bit(s, 1);
  return p;
}

MultiIndex inverse_receiver_pattern(int n, int i, int j) {
  MultiIndex p(2 * n, 0);
  for (int l = 1; l <= n; ++l) {
    if (l != i) p = p.with_bit(2 * (l - 1), 1);
  }
  if (j >= 1) p = p.with_bit(2 * (j - 1) + 1, 1);
  return p;
}

ProtocolPlan plan_matvec(const Matrix& a, const Vector& v, const ScalePolicy& policy) {
  const int m = static_cast<int>(a.rows());
  const int k = static_cast<int>(a.cols());
  if (m < 1 || k < 1) throw std::invalid_argument("plan_matvec: empty matrix");
  if (v.size() != k) throw std::invalid_argument("plan_matvec: dimension mismatch");

  const double s_a = auto_scale(a.squaredNorm(), 0.0, policy);
  const double s_v = auto_scale(v.squaredNorm(), 0.0, policy);

  std::vector<RowVector> a_rows;
  for (int i = 0; i < m; ++i) a_rows.push_back(s_a * a.row(i));
  std::vector<SenderState> senders{encode_sender(a_rows),
                                   encode_sender({RowVector(s_v * v.transpose())})};

  const std::vector<std::vector<int>> rows{std::vector<int>(static_cast<std::size_t>(m), k), {k}};
  SystemLayout probe(rows, {});
  std::vector<int> receiver;
  for (int i = 0; i < m; ++i) receiver.push_back(probe.position(0, i, k - 1));
  receiver.push_back(probe.position(1, 0, k - 1));
  SystemLayout layout(rows, receiver);

  const double theta1 = 1.0 / std::sqrt(static_cast<double>(k));
  PartialUnitarySpec w_spec(layout.total_qubits());
  ProtocolPlan plan{Operation::matvec, layout,          std::move(senders), std::move(w_spec),
                    std::nullopt,      {},              Complex{},          Complex{},
                    {},                m,               1,                  0.0,
                    0.0};
  for (int i = 1; i <= m; ++i) {
    const MultiIndex pattern = receiver_pattern(m + 1, {i - 1, m});
    std::vector<std::pair<MultiIndex, Complex>> entries;
    for (int l = 1; l <= k; ++l) {
      entries.emplace_back(global_pattern(layout, {layout.position(0, i - 1, l - 1),
                                                   layout.position(1, 0, l - 1)}),
                           Complex{theta1, 0.0});
    }
    add_row_constraint(plan.w_spec, layout.embed_receiver(pattern), std::move(entries));
    plan.extraction.push_back({i, 0, false, pattern});
  }
  plan.decode_constant =
      theta1 * std::conj(plan.senders[0].vacuum()) * std::conj(plan.senders[1].vacuum());
  plan.scales.factors = {s_a, s_v};
  check_extraction_order(plan);
  return plan;
}

ProtocolPlan plan_matmul(const Matrix& a, const Matrix& b, const ScalePolicy& policy) {
  const int m = static_cast<int>(a.rows());
  const int k = static_cast<int>(a.cols());
  const int n = static_cast<int>(b.cols());
  if (m < 1 || k < 1 || n < 1) throw std::invalid_argument("plan_matmul: empty matrix");
  if (b.rows() != k) throw std::invalid_argument("plan_matmul: inner dimensions differ");

  const double s_a = auto_scale(a.squaredNorm(), 0.0, policy);
  const double s_b = auto_scale(b.squaredNorm(), 0.0, policy);

  std::vector<RowVector> a_rows;
  for (int i = 0; i < m; ++i) a_rows.push_back(s_a * a.row(i));
  // S2 stores Bᵀ: its row i carries column i of B, so the shared index l runs
  // along each row of both senders.
  std::vector<RowVector> b_rows;
  for (int i = 0; i < n; ++i) b_rows.push_back(s_b * b.col(i).transpose());
  std::vector<SenderState> senders{encode_sender(a_rows), encode_sender(b_rows)};

  const std::vector<std::vector<int>> rows{std::vector<int>(static_cast<std::size_t>(m), k),
                                           std::vector<int>(static_cast<std::size_t>(n), k)};
  SystemLayout probe(rows, {});
  std::vector<int> receiver;
  for (int i = 0; i < m; ++i) receiver.push_back(probe.position(0, i, k - 1));
  for (int j = 0; j < n; ++j) receiver.push_back(probe.position(1, j, k - 1));
  SystemLayout layout(rows, receiver);

  const double theta1 = 1.0 / std::sqrt(static_cast<double>(k));
  ProtocolPlan plan{Operation::matmul,
                    layout,
                    std::move(senders),
                    PartialUnitarySpec(layout.total_qubits()),
                    std::nullopt,
                    {},
                    Complex{},
                    Complex{},
                    {},
                    m,
                    n,
                    0.0,
                    0.0};
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      const MultiIndex pattern = receiver_pattern(m + n, {i - 1, m + j - 1});
      std::vector<std::pair<MultiIndex, Complex>> entries;
      for (int l = 1; l <= k; ++l) {
        entries.emplace_back(global_pattern(layout, {layout.position(0, i - 1, l - 1),
                                                     layout.position(1, j - 1, l - 1)}),
                             Complex{theta1, 0.0});
      }
      add_row_constraint(plan.w_spec, layout.embed_receiver(pattern), std::move(entries));
      plan.extraction.push_back({i, j, false, pattern});
    }
  }
  plan.decode_constant =
      theta1 * std::conj(plan.senders[0].vacuum()) * std::conj(plan.senders[1].vacuum());
  plan.scales.factors = {s_a, s_b};
  check_extraction_order(plan);
  return plan;
}

namespace {

// Sum-protocol geometry. S1 rows run left to right with the λ qubit leading
// row 1; S2 rows run right to left with its λ qubit trailing row 1
// (Fig-style mirrored enumeration). Column j is 1-based; j = 0 addresses the
// λ qubit.
int sum_s1_slot(int row, int col) { return row == 0 ? col : col - 1; }
int sum_s2_slot(int n, int col) { return n - col; }

}  // namespace

ProtocolPlan plan_matsum(const Matrix& c, const Matrix& d, double lambda,
                         const ScalePolicy& policy) {
  const int m = static_cast<int>(c.rows());
  const int n = static_cast<int>(c.cols());
  if (m < 1 || n < 1) throw std::invalid_argument("plan_matsum: empty matrix");
  if (d.rows() != m || d.cols() != n) throw std::invalid_argument("plan_matsum: shape mismatch");
  if (lambda <= 0.0) throw std::invalid_argument("plan_matsum: lambda must be positive");

  // One common scale: decode divides by ωλ once, and the sum is linear in s.
  const double s = std::min(auto_scale(c.squaredNorm(), lambda * lambda, policy),
                            auto_scale(d.squaredNorm(), lambda * lambda, policy));

  std::vector<RowVector> c_rows;
  for (int i = 0; i < m; ++i) c_rows.push_back(s * c.row(i));
  std::vector<RowVector> d_rows;
  for (int i = 0; i < m; ++i) d_rows.push_back(s * d.row(i).reverse());

  std::vector<SenderState> senders{
      encode_sender(c_rows, {{0, Complex{lambda, 0.0}}}),
      encode_sender(d_rows, {{n, Complex{lambda, 0.0}}})};

  std::vector<int> row_lengths(static_cast<std::size_t>(m), n);
  row_lengths[0] = n + 1;
  const std::vector<std::vector<int>> rows{row_lengths, row_lengths};
  SystemLayout probe(rows, {});
  std::vector<int> receiver;
  for (int i = 0; i < m; ++i) receiver.push_back(probe.position(0, i, sum_s1_slot(i, n)));
  for (int j = 1; j <= n; ++j) receiver.push_back(probe.position(1, m - 1, sum_s2_slot(n, j)));
  SystemLayout layout(rows, receiver);

  const double theta2 = 1.0 / std::sqrt(2.0);
  ProtocolPlan plan{Operation::matsum,
                    layout,
                    std::move(senders),
                    PartialUnitarySpec(layout.total_qubits()),
                    std::nullopt,
                    {},
                    Complex{},
                    Complex{},
                    {},
                    m,
                    n,
                    lambda,
                    0.0};
  const int s1_lambda = layout.position(0, 0, 0);
  const int s2_lambda = layout.position(1, 0, sum_s2_slot(n, 0));
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      const MultiIndex pattern = receiver_pattern(m + n, {i - 1, m + j - 1});
      std::vector<std::pair<MultiIndex, Complex>> entries;
      entries.emplace_back(
          global_pattern(layout, {layout.position(0, i - 1, sum_s1_slot(i - 1, j)), s2_lambda}),
          Complex{theta2, 0.0});
      entries.emplace_back(
          global_pattern(layout, {layout.position(1, i - 1, sum_s2_slot(n, j)), s1_lambda}),
          Complex{theta2, 0.0});
      add_row_constraint(plan.w_spec, layout.embed_receiver(pattern), std::move(entries));
      plan.extraction.push_back({i, j, false, pattern});
    }
  }
  plan.decode_constant = theta2 * std::conj(plan.senders[0].vacuum()) *
                         std::conj(plan.senders[1].vacuum()) * lambda;
  plan.scales.factors = {s};
  check_extraction_order(plan);
  return plan;
}

ProtocolPlan plan_determinant(const Matrix& e, const ScalePolicy& policy) {
  const int n = static_cast<int>(e.rows());
  if (n < 1) throw std::invalid_argument("plan_determinant: empty matrix");
  if (e.cols() != n) throw std::invalid_argument("plan_determinant: matrix not square");

  std::vector<double> scales;
  std::vector<SenderState> senders;
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < n; ++i) {
    const double s_i = auto_scale(e.row(i).squaredNorm(), 0.0, policy);
    scales.push_back(s_i);
    senders.push_back(encode_sender({RowVector(s_i * e.row(i))}));
    rows.push_back({n});
  }
  SystemLayout probe(rows, {});
  std::vector<int> receiver;
  for (int i = 0; i < n; ++i) receiver.push_back(probe.position(i, 0, n - 1));
  SystemLayout layout(rows, receiver);

  double factorial = 1.0;
  for (int i = 2; i <= n; ++i) factorial *= i;
  const double theta3 = 1.0 / std::sqrt(factorial);

  ProtocolPlan plan{Operation::determinant,
                    layout,
                    std::move(senders),
                    PartialUnitarySpec(layout.total_qubits()),
                    std::nullopt,
                    {},
                    Complex{},
                    Complex{},
                    {},
                    1,
                    1,
                    0.0,
                    0.0};

  std::vector<int> columns(static_cast<std::size_t>(n));
  std::iota(columns.begin(), columns.end(), 0);
  std::vector<std::pair<MultiIndex, Complex>> entries;
  for_each_permutation_signed(columns, [&](const std::vector<int>& perm, int sign) {
    std::vector<int> positions;
    for (int l = 0; l < n; ++l) positions.push_back(layout.position(l, 0, perm[static_cast<std::size_t>(l)]));
    entries.emplace_back(global_pattern(layout, positions), Complex{sign * theta3, 0.0});
  });
  const MultiIndex all_ones(n, (std::uint64_t{1} << n) - 1);
  add_row_constraint(plan.w_spec, layout.embed_receiver(all_ones), std::move(entries));
  plan.extraction.push_back({0, 0, false, all_ones});

  Complex gamma{theta3, 0.0};
  for (const auto& sender : plan.senders) gamma *= std::conj(sender.vacuum());
  plan.decode_constant = gamma;
  plan.scales.factors = std::move(scales);
  check_extraction_order(plan);
  return plan;
}

ProtocolPlan plan_inverse(const Matrix& e, double sigma, const ScalePolicy& policy) {
  const int n = static_cast<int>(e.rows());
  if (n < 1) throw std::invalid_argument("plan_inverse: empty matrix");
  if (e.cols() != n) throw std::invalid_argument("plan_inverse: matrix not square");
  if (sigma <= 0.0) throw std::invalid_argument("plan_inverse: sigma must be positive");

  std::vector<double> scales;
  std::vector<SenderState> senders;
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < n; ++i) {
    const double s_i = auto_scale(e.row(i).squaredNorm(), sigma * sigma, policy);
    scales.push_back(s_i);
    senders.push_back(encode_sender({RowVector(s_i * e.row(i))}, {{n, Complex{sigma, 0.0}}}));
    rows.push_back({n + 1});
  }
  SystemLayout probe(rows, {});
  std::vector<int> receiver;
  for (int i = 0; i < n; ++i) {
    receiver.push_back(probe.position(i, 0, n - 1));  // last matrix column
    receiver.push_back(probe.position(i, 0, n));      // aux qubit
  }
  SystemLayout layout(rows, receiver);

  double factorial = 1.0;
  for (int i = 2; i <= n; ++i) factorial *= i;
  const double theta3 = 1.0 / std::sqrt(factorial);
  const double theta4 = 1.0 / std::sqrt(factorial / n);

  ProtocolPlan plan{Operation::inverse,
                    layout,
                    std::move(senders),
                    PartialUnitarySpec(layout.total_qubits()),
                    std::nullopt,
                    {},
                    Complex{},
                    Complex{},
                    {},
                    n,
                    n,
                    0.0,
                    sigma};

  // Algebraic-complement rows: sender i parks its excitation on the aux
  // qubit while the remaining senders run over permutations of the columns
  // with column j removed.
  for (int i = 1; i <= n; ++i) {
    std::vector<int> other_senders;
    for (int p = 1; p <= n; ++p) {
      if (p != i) other_senders.push_back(p);
    }
    for (int j = 1; j <= n; ++j) {
      std::vector<int> columns;
      for (int l = 1; l <= n; ++l) {
        if (l != j) columns.push_back(l);
      }
      const double parity_ij = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      std::vector<std::pair<MultiIndex, Complex>> entries;
      for_each_permutation_signed(columns, [&](const std::vector<int>& perm, int sign) {
        std::vector<int> positions{layout.position(i - 1, 0, n)};
        for (std::size_t t = 0; t < perm.size(); ++t) {
          positions.push_back(layout.position(other_senders[t] - 1, 0, perm[t] - 1));
        }
        entries.emplace_back(global_pattern(layout, positions),
                             Complex{parity_ij * sign * theta4, 0.0});
      });
      const MultiIndex pattern = inverse_receiver_pattern(n, i, j);
      add_row_constraint(plan.w_spec, layout.embed_receiver(pattern), std::move(entries));
      plan.extraction.push_back({i, j, false, pattern});
    }
  }

  // Determinant row at 1010…10.
  {
    std::vector<int> columns(static_cast<std::size_t>(n));
    std::iota(columns.begin(), columns.end(), 1);
    std::vector<std::pair<MultiIndex, Complex>> entries;
    for_each_permutation_signed(columns, [&](const std::vector<int>& perm, int sign) {
      std::vector<int> positions;
      for (int l = 0; l < n; ++l) {
        positions.push_back(layout.position(l, 0, perm[static_cast<std::size_t>(l)] - 1));
      }
      entries.emplace_back(global_pattern(layout, positions), Complex{sign * theta3, 0.0});
    });
    const MultiIndex pattern = inverse_receiver_pattern(n, 0, 0);
    add_row_constraint(plan.w_spec, layout.embed_receiver(pattern), std::move(entries));
    plan.extraction.push_back({0, 0, false, pattern});
  }

  Complex vacuum_product{1.0, 0.0};
  for (const auto& sender : plan.senders) vacuum_product *= std::conj(sender.vacuum());
  plan.decode_constant = theta4 * sigma * vacuum_product;  // μ
  plan.det_constant = theta3 * vacuum_product;             // γ̂
  plan.scales.factors = std::move(scales);
  check_extraction_order(plan);
  return plan;
}

ProtocolPlan plan_linsolve(const Matrix& e, const Vector& b, double sigma,
                           const ScalePolicy& policy, bool normalize_b) {
  const int n = static_cast<int>(e.rows());
  if (b.size() != n) throw std::invalid_argument("plan_linsolve: rhs size mismatch");
  const double b_norm = b.norm();
  Vector b_unit = b;
  double b_input_norm = 1.0;
  if (std::abs(b_norm - 1.0) > kUnitVectorTol) {
    if (!normalize_b) {
      throw std::invalid_argument("plan_linsolve: b must be a unit vector (pass normalize_b)");
    }
    if (b_norm < kTiny) throw std::invalid_argument("plan_linsolve: b is numerically zero");
    b_unit /= b_norm;
    b_input_norm = b_norm;
  }

  ProtocolPlan plan = plan_inverse(e, sigma, policy);
  plan.op = Operation::linsolve;
  plan.result_rows = n;
  plan.result_cols = 1;
  plan.scales.b_input_norm = b_input_norm;

  // Fold the per-row scales into the encoded right-hand side: solving
  // (diag(s)E)x̂ = b̂ with b̂ = diag(s)b/‖diag(s)b‖ gives x = x̂·‖diag(s)b‖.
  Vector b_embed = b_unit;
  for (int i = 0; i < n; ++i) b_embed(i) *= plan.scales.factors[static_cast<std::size_t>(i)];
  const double embed_norm = b_embed.norm();
  if (embed_norm < kTiny) throw std::invalid_argument("plan_linsolve: scaled b is numerically zero");
  b_embed /= embed_norm;
  plan.scales.b_embed_norm = embed_norm;

  PartialUnitarySpec v_spec(2 * n);
  for (int j = 1; j <= n; ++j) {
    std::vector<std::pair<MultiIndex, Complex>> entries;
    for (int i = 1; i <= n; ++i) {
      const Complex bi = b_embed(i - 1);
      if (bi != Complex{0.0, 0.0}) entries.emplace_back(inverse_receiver_pattern(n, i, j), bi);
    }
    add_row_constraint(v_spec, inverse_receiver_pattern(n, j, j), std::move(entries));
  }
  plan.v_spec = std::move(v_spec);

  plan.extraction.clear();
  for (int j = 1; j <= n; ++j) {
    plan.extraction.push_back({j, 0, true, inverse_receiver_pattern(n, j, j)});
  }
  plan.extraction.push_back({0, 0, false, inverse_receiver_pattern(n, 0, 0)});
  check_extraction_order(plan);
  return plan;
}

Matrix decode(const ProtocolPlan& plan, const ExtractionValues& extracted) {
  const auto value = [&](int i, int j) {
    const auto it = extracted.find({i, j});
    if (it == extracted.end()) {
      throw std::invalid_argument("decode: extracted value missing for a plan label");
    }
    return it->second;
  };
  if (std::abs(plan.decode_constant) < kTiny) {
    throw NormalizationError("decode: decode constant is degenerate");
  }

  Matrix out(plan.result_rows, plan.result_cols);
  switch (plan.op) {
    case Operation::matvec: {
      const double unscale = plan.scales.factors[0] * plan.scales.factors[1];
      for (int i = 1; i <= plan.result_rows; ++i) {
        out(i - 1, 0) = value(i, 0) / plan.decode_constant / unscale;
      }
      break;
    }
    case Operation::matmul: {
      const double unscale = plan.scales.factors[0] * plan.scales.factors[1];
      for (int i = 1; i <= plan.result_rows; ++i) {
        for (int j = 1; j <= plan.result_cols; ++j) {
          out(i - 1, j - 1) = value(i, j) / plan.decode_constant / unscale;
        }
      }
      break;
    }
    case Operation::matsum: {
      const double unscale = plan.scales.factors[0];
      for (int i = 1; i <= plan.result_rows; ++i) {
        for (int j = 1; j <= plan.result_cols; ++j) {
          out(i - 1, j - 1) = value(i, j) / plan.decode_constant / unscale;
        }
      }
      break;
    }
    case Operation::determinant: {
      double unscale = 1.0;
      for (double s : plan.scales.factors) unscale *= s;
      out(0, 0) = value(0, 0) / plan.decode_constant / unscale;
      break;
    }
    case Operation::inverse: {
      const Complex det_element = value(0, 0);
      if (std::abs(det_element) < kTiny) {
        throw SingularMatrixError("decode: matrix is singular (determinant element vanished)");
      }
      const int n = plan.result_rows;
      const Complex denom = plan.sigma * std::sqrt(static_cast<double>(n)) * det_element;
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          // E⁻¹(j,i) picks up the scale of row i of the scaled system.
          out(j - 1, i - 1) = value(i, j) / denom * plan.scales.factors[static_cast<std::size_t>(i - 1)];
        }
      }
      break;
    }
    case Operation::linsolve: {
      const Complex det_element = value(0, 0);
      if (std::abs(det_element) < kTiny) {
        throw SingularMatrixError("decode: matrix is singular (determinant element vanished)");
      }
      const int n = plan.result_rows;
      const Complex denom = plan.sigma * std::sqrt(static_cast<double>(n)) * det_element;
      for (int j = 1; j <= n; ++j) {
        out(j - 1, 0) = value(j, 0) / denom * plan.scales.b_embed_norm * plan.scales.b_input_norm;
      }
      break;
    }
  }
  return out;
}

}  // namespace senrec
