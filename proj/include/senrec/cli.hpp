// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "senrec/protocols.hpp"

namespace senrec::cli {

/// Outcome of one CLI run, also used to render the text/JSON report.
struct RunReport {
  std::string operation;
  std::string engine;
  std::vector<double> scales;
  ExtractionValues extracted;
  Matrix decoded;
  std::optional<Matrix> oracle;       // present iff --verify
  std::optional<double> deviation;    // present iff --verify
  double wall_ms = 0.0;
};

/// Exit codes: 0 success, 1 input/normalization/usage error,
/// 2 verification failure (deviation above tolerance).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace senrec::cli
