// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "senrec/evolution.hpp"
#include "senrec/types.hpp"

namespace senrec {

// Matrix file schema: {"rows": m, "cols": k, "data": [[re, im], ...]}
// row-major; vectors are rows = k, cols = 1.

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

Matrix read_matrix(const std::string& path);
void write_matrix(const std::string& path, const Matrix& m);

/// Receiver density dump: the matrix plus a basis-ordering note.
nlohmann::json receiver_density_to_json(const ReceiverDensity& density);

}  // namespace senrec
