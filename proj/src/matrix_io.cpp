// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "senrec/matrix_io.hpp"

#include <fstream>

namespace senrec {

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      data.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw std::invalid_argument("matrix json: expected {rows, cols, data}");
  }
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix json: empty shape");
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw std::invalid_argument("matrix json: data length != rows*cols");
  }
  Matrix m(rows, cols);
  Eigen::Index flat = 0;
  for (const auto& entry : data) {
    if (!entry.is_array() || entry.size() != 2) {
      throw std::invalid_argument("matrix json: entries must be [re, im] pairs");
    }
    m(flat / cols, flat % cols) = Complex{entry[0].get<double>(), entry[1].get<double>()};
    ++flat;
  }
  return m;
}

Matrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return matrix_from_json(j);
}

void write_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write matrix file: " + path);
  out << matrix_to_json(m).dump(2) << "\n";
}

nlohmann::json receiver_density_to_json(const ReceiverDensity& density) {
  nlohmann::json j = matrix_to_json(density.matrix);
  j["qubits"] = density.num_qubits;
  j["coherence_order"] = density.coherence_order;
  j["basis"] = "receiver patterns ascending by binary value, slot 0 most significant";
  return j;
}

}  // namespace senrec
