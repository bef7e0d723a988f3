// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "senrec/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "senrec/evolution.hpp"
#include "senrec/harness.hpp"
#include "senrec/matrix_io.hpp"
#include "senrec/oracle.hpp"

namespace senrec::cli {

namespace {

struct Options {
  std::string engine = "sector";
  bool auto_scale = true;
  double lambda = kDefaultLambda;
  double sigma = kDefaultSigma;
  double tolerance = 1e-9;
  bool verify = false;
  bool json_output = false;
  bool normalize_b = false;
  std::string dump_receiver;
  std::string dump_w;
  std::string a_path;
  std::string b_path;
};

std::string format_complex(Complex z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real();
  if (z.imag() != 0.0) {
    os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  }
  return os.str();
}

void print_matrix(std::ostream& out, const Matrix& m, const char* indent) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << indent;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << (c > 0 ? "  " : "") << format_complex(m(r, c));
    }
    out << "\n";
  }
}

std::string label_str(const std::pair<int, int>& label) {
  if (label == std::pair<int, int>{0, 0}) return "det";
  if (label.second == 0) return std::to_string(label.first);
  return std::to_string(label.first) + "," + std::to_string(label.second);
}

void print_report(std::ostream& out, const RunReport& report) {
  out << "operation: " << report.operation << "\n";
  out << "engine: " << report.engine << "\n";
  out << "scales:";
  for (double s : report.scales) out << " " << std::setprecision(12) << s;
  out << "\n";
  out << "extracted coherence elements:\n";
  for (const auto& [label, value] : report.extracted) {
    out << "  [" << label_str(label) << "] = " << format_complex(value) << "\n";
  }
  out << "decoded result:\n";
  print_matrix(out, report.decoded, "  ");
  if (report.oracle) {
    out << "oracle result:\n";
    print_matrix(out, *report.oracle, "  ");
    out << "max deviation: " << std::setprecision(6) << *report.deviation << "\n";
  }
  out << "wall time: " << std::setprecision(4) << report.wall_ms << " ms\n";
}

nlohmann::json report_to_json(const RunReport& report) {
  nlohmann::json extracted = nlohmann::json::array();
  for (const auto& [label, value] : report.extracted) {
    extracted.push_back(
        {{"label", label_str(label)}, {"value", {value.real(), value.imag()}}});
  }
  nlohmann::json j{{"operation", report.operation},
                   {"engine", report.engine},
                   {"scales", report.scales},
                   {"extracted", std::move(extracted)},
                   {"decoded", matrix_to_json(report.decoded)},
                   {"wall_ms", report.wall_ms}};
  if (report.oracle) {
    j["oracle"] = matrix_to_json(*report.oracle);
    j["max_deviation"] = *report.deviation;
  }
  return j;
}

Vector read_vector(const std::string& path) {
  const Matrix m = read_matrix(path);
  if (m.cols() != 1) throw std::invalid_argument("expected a column vector in " + path);
  return m.col(0);
}

int run_protocol(Operation op, const Options& opts, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();

  harness::Instance inst;
  inst.op = op;
  inst.lambda = opts.lambda;
  inst.sigma = opts.sigma;
  switch (op) {
    case Operation::matvec:
      inst.a = read_matrix(opts.a_path);
      inst.v = read_vector(opts.b_path);
      break;
    case Operation::matmul:
    case Operation::matsum:
      inst.a = read_matrix(opts.a_path);
      inst.b = read_matrix(opts.b_path);
      break;
    case Operation::determinant:
    case Operation::inverse:
      inst.a = read_matrix(opts.a_path);
      break;
    case Operation::linsolve:
      inst.a = read_matrix(opts.a_path);
      inst.v = read_vector(opts.b_path);
      break;
  }

  ScalePolicy policy;
  policy.mode = opts.auto_scale ? ScalePolicy::Mode::automatic : ScalePolicy::Mode::off;
  const ProtocolPlan plan =
      op == Operation::linsolve
          ? plan_linsolve(inst.a, inst.v, opts.sigma, policy, opts.normalize_b)
          : harness::build_plan(inst, policy);

  const Engine engine = opts.engine == "dense" ? Engine::dense : Engine::sector;
  if (!opts.dump_receiver.empty() && engine != Engine::dense) {
    err << "error: --dump-receiver needs the dense engine (the sector engine never forms the "
           "receiver density)\n";
    return 1;
  }

  const RunResult result = run_plan(plan, engine);
  RunReport report;
  report.operation = operation_name(op);
  report.engine = opts.engine;
  report.scales = plan.scales.factors;
  report.extracted = result.values;
  report.decoded = decode(plan, result.values);

  if (opts.verify) {
    report.oracle = harness::oracle_result(inst);
    report.deviation = harness::max_abs_diff(report.decoded, *report.oracle);
  }

  if (!opts.dump_receiver.empty()) {
    std::ofstream dump(opts.dump_receiver);
    if (!dump) throw std::invalid_argument("cannot write " + opts.dump_receiver);
    dump << receiver_density_to_json(*result.receiver).dump(2) << "\n";
  }
  if (!opts.dump_w.empty()) {
    nlohmann::json blocks = nlohmann::json::array();
    for (int sector : plan.w_spec.constrained_sectors()) {
      nlohmann::json entry = matrix_to_json(complete_sector(plan.w_spec, sector));
      entry["sector"] = sector;
      blocks.push_back(std::move(entry));
    }
    std::ofstream dump(opts.dump_w);
    if (!dump) throw std::invalid_argument("cannot write " + opts.dump_w);
    dump << blocks.dump(2) << "\n";
  }

  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (opts.json_output) {
    out << report_to_json(report).dump(2) << "\n";
  } else {
    print_report(out, report);
  }

  if (report.deviation && *report.deviation > opts.tolerance) {
    err << "verification FAILED: deviation " << *report.deviation << " > tolerance "
        << opts.tolerance << "\n";
    return 2;
  }
  return 0;
}

int run_selftest(std::uint64_t seed, int count, double tolerance, std::ostream& out,
                 std::ostream& err) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim2(1, 2);
  std::uniform_int_distribution<int> dim3(1, 3);
  std::uniform_int_distribution<int> dim4(2, 4);

  bool ok = true;
  for (Operation op : {Operation::matvec, Operation::matmul, Operation::matsum,
                       Operation::determinant, Operation::inverse, Operation::linsolve}) {
    double worst_sector = 0.0, worst_dense = 0.0, worst_gap = 0.0;
    for (int t = 0; t < count; ++t) {
      int m = 1, k = 1, n = 1;
      switch (op) {
        case Operation::matvec: m = dim3(rng); k = dim3(rng); break;
        case Operation::matmul: m = dim3(rng); k = dim3(rng); n = dim3(rng); break;
        case Operation::matsum: m = dim2(rng); n = dim2(rng); break;
        default: n = dim4(rng); break;
      }
      const auto inst = harness::random_instance(rng, op, m, k, n);
      const bool dense_ok = [&] {
        switch (op) {
          case Operation::matvec: return true;
          case Operation::matmul: return m <= 2 && k <= 2 && n <= 2;
          case Operation::matsum: return true;
          default: return n <= 3;
        }
      }();
      const auto outcome = harness::run_instance(inst, dense_ok);
      worst_sector = std::max(worst_sector, outcome.sector_deviation);
      if (outcome.dense_ran) {
        worst_dense = std::max(worst_dense, outcome.dense_deviation);
        worst_gap = std::max(worst_gap, outcome.engine_gap);
      }
    }
    const bool pass = worst_sector <= tolerance && worst_dense <= tolerance && worst_gap <= 1e-12;
    ok = ok && pass;
    out << (pass ? "ok   " : "FAIL ") << operation_name(op) << ": " << count
        << " instances, max sector dev " << std::setprecision(3) << worst_sector
        << ", max dense dev " << worst_dense << ", max engine gap " << worst_gap << "\n";
  }
  if (!ok) {
    err << "selftest FAILED\n";
    return 2;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sender-receiver quantum protocol simulator for matrix operations"};
  app.require_subcommand(1);

  Options opts;
  std::uint64_t seed = 1;
  int selftest_count = 20;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--engine", opts.engine, "Evolution engine")
        ->check(CLI::IsMember({"dense", "sector"}))
        ->capture_default_str();
    cmd->add_flag("--auto-scale,!--no-auto-scale", opts.auto_scale,
                  "Rescale payloads to fit the norm bound (default on)");
    cmd->add_option("--tolerance", opts.tolerance, "Verification tolerance")
        ->capture_default_str();
    cmd->add_flag("--verify", opts.verify, "Compare against the classical oracle");
    cmd->add_flag("--json", opts.json_output, "Machine-readable report");
    cmd->add_option("--dump-receiver", opts.dump_receiver,
                    "Write the receiver density matrix as JSON (dense engine only)");
    cmd->add_option("--dump-w", opts.dump_w, "Write the completed W sector blocks as JSON");
  };

  CLI::App* matvec = app.add_subcommand("matvec", "Matrix-vector product A·v");
  matvec->add_option("-a,--matrix", opts.a_path, "Matrix A (JSON)")->required();
  matvec->add_option("-v,--vector", opts.b_path, "Vector v (JSON)")->required();
  add_common(matvec);

  CLI::App* matmul = app.add_subcommand("matmul", "Matrix-matrix product A·B");
  matmul->add_option("-a,--lhs", opts.a_path, "Matrix A (JSON)")->required();
  matmul->add_option("-b,--rhs", opts.b_path, "Matrix B (JSON)")->required();
  add_common(matmul);

  CLI::App* matsum = app.add_subcommand("sum", "Matrix sum C + D");
  matsum->add_option("-a,--lhs", opts.a_path, "Matrix C (JSON)")->required();
  matsum->add_option("-b,--rhs", opts.b_path, "Matrix D (JSON)")->required();
  matsum->add_option("--lambda", opts.lambda, "Marker amplitude λ")->capture_default_str();
  add_common(matsum);

  CLI::App* det = app.add_subcommand("det", "Determinant of a square matrix");
  det->add_option("-m,--matrix", opts.a_path, "Matrix E (JSON)")->required();
  add_common(det);

  CLI::App* inv = app.add_subcommand("inv", "Inverse of a non-degenerate square matrix");
  inv->add_option("-m,--matrix", opts.a_path, "Matrix E (JSON)")->required();
  inv->add_option("--sigma", opts.sigma, "Aux amplitude σ")->capture_default_str();
  add_common(inv);

  CLI::App* solve = app.add_subcommand("solve", "Solve E·x = b for a unit vector b");
  solve->add_option("-m,--matrix", opts.a_path, "Matrix E (JSON)")->required();
  solve->add_option("-b,--rhs", opts.b_path, "Unit vector b (JSON)")->required();
  solve->add_option("--sigma", opts.sigma, "Aux amplitude σ")->capture_default_str();
  solve->add_flag("--normalize-b", opts.normalize_b,
                  "Normalize a non-unit b instead of rejecting it");
  add_common(solve);

  CLI::App* selftest = app.add_subcommand("selftest", "Randomized oracle sweep over all protocols");
  selftest->add_option("--seed", seed, "RNG seed")->capture_default_str();
  selftest->add_option("--count", selftest_count, "Instances per operation")
      ->capture_default_str();
  selftest->add_option("--tolerance", opts.tolerance, "Deviation ceiling")->capture_default_str();

  std::vector<const char*> argv;
  argv.push_back("senrec");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    const int code = app.exit(e, os, os);
    (code == 0 ? out : err) << os.str();
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(matvec)) return run_protocol(Operation::matvec, opts, out, err);
    if (app.got_subcommand(matmul)) return run_protocol(Operation::matmul, opts, out, err);
    if (app.got_subcommand(matsum)) return run_protocol(Operation::matsum, opts, out, err);
    if (app.got_subcommand(det)) return run_protocol(Operation::determinant, opts, out, err);
    if (app.got_subcommand(inv)) return run_protocol(Operation::inverse, opts, out, err);
    if (app.got_subcommand(solve)) return run_protocol(Operation::linsolve, opts, out, err);
    if (app.got_subcommand(selftest)) {
      return run_selftest(seed, selftest_count, opts.tolerance, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace senrec::cli
