// Copyright 2026 The Senrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "senrec/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "worked_example.hpp"
#include "senrec/matrix_io.hpp"

using namespace senrec;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / "senrec_cli_test";
    std::filesystem::create_directories(path);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("cli det on the worked example verifies and dumps the density") {
  TempDir tmp;
  write_matrix(tmp.file("E.json"), fixtures::example_e());
  const std::string dump = tmp.file("rho.json");

  std::string out;
  const int code = run_cli({"det", "-m", tmp.file("E.json"), "--engine", "dense", "--verify",
                            "--dump-receiver", dump},
                           &out);
  CHECK(code == 0);
  CHECK(out.find("0.5") != std::string::npos);
  CHECK(out.find("max deviation") != std::string::npos);

  std::ifstream in(dump);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  CHECK(j.at("rows") == 4);
  // Entry [3][0] = 3√2/32 ≈ 0.13258; trace = 1.
  const auto& data = j.at("data");
  CHECK(data[12][0].get<double>() == doctest::Approx(3.0 * std::sqrt(2.0) / 32.0).epsilon(1e-12));
  double trace = 0.0;
  for (int d = 0; d < 4; ++d) trace += data[d * 4 + d][0].get<double>();
  CHECK(trace == doctest::Approx(1.0).epsilon(1e-12));

  // Vacuum-only payload: the dumped density is a single 1 at [0][0].
  write_matrix(tmp.file("zero.json"), Matrix::Zero(2, 2));
  const std::string vac_dump = tmp.file("vac.json");
  CHECK(run_cli({"det", "-m", tmp.file("zero.json"), "--engine", "dense", "--dump-receiver",
                 vac_dump}) == 0);
  std::ifstream vac_in(vac_dump);
  nlohmann::json vac;
  vac_in >> vac;
  for (int r = 0; r < 4; ++r) {
    for (int cidx = 0; cidx < 4; ++cidx) {
      const double expected = (r == 0 && cidx == 0) ? 1.0 : 0.0;
      CHECK(vac.at("data")[r * 4 + cidx][0].get<double>() == doctest::Approx(expected));
      CHECK(vac.at("data")[r * 4 + cidx][1].get<double>() == 0.0);
    }
  }
}

TEST_CASE("cli solve reproduces the worked solution on both engines") {
  TempDir tmp;
  write_matrix(tmp.file("E.json"), fixtures::example_e());
  write_matrix(tmp.file("b.json"), fixtures::example_b());

  for (const char* engine : {"sector", "dense"}) {
    std::string out;
    const int code = run_cli({"solve", "-m", tmp.file("E.json"), "-b", tmp.file("b.json"),
                              "--engine", engine, "--verify", "--json"},
                             &out);
    CHECK(code == 0);
    const auto report = nlohmann::json::parse(out);
    const auto decoded = matrix_from_json(report.at("decoded"));
    CHECK(decoded(0, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    CHECK(decoded(1, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    CHECK(report.at("max_deviation").get<double>() < 1e-10);
  }
}

TEST_CASE("cli rejects dump-receiver on the sector engine") {
  TempDir tmp;
  write_matrix(tmp.file("E.json"), fixtures::example_e());
  std::string err;
  const int code =
      run_cli({"det", "-m", tmp.file("E.json"), "--dump-receiver", tmp.file("x.json")}, nullptr, &err);
  CHECK(code == 1);
  CHECK(err.find("dense engine") != std::string::npos);
}

TEST_CASE("cli input error paths exit with code 1") {
  TempDir tmp;
  {
    std::ofstream bad(tmp.file("bad.json"));
    bad << "{ not json";
  }
  std::string err;
  CHECK(run_cli({"det", "-m", tmp.file("bad.json")}, nullptr, &err) == 1);
  CHECK(err.find("error:") != std::string::npos);

  CHECK(run_cli({"det", "-m", tmp.file("missing.json")}, nullptr, &err) == 1);

  // Shape mismatch between the operands.
  write_matrix(tmp.file("A23.json"), Matrix::Zero(2, 3));
  write_matrix(tmp.file("A22.json"), Matrix::Identity(2, 2) * Complex{0.4, 0.0});
  CHECK(run_cli({"matmul", "-a", tmp.file("A22.json"), "-b", tmp.file("A23.json")}) == 0);
  CHECK(run_cli({"matmul", "-a", tmp.file("A23.json"), "-b", tmp.file("A23.json")}) == 1);

  // Payload too large with scaling disabled.
  write_matrix(tmp.file("big.json"), Matrix::Identity(2, 2) * Complex{1.5, 0.0});
  CHECK(run_cli({"det", "-m", tmp.file("big.json"), "--no-auto-scale"}) == 1);

  // Non-unit b is rejected unless --normalize-b.
  Vector long_b(2);
  long_b << Complex{1.0, 0.0}, Complex{1.0, 0.0};
  write_matrix(tmp.file("long_b.json"), long_b);
  write_matrix(tmp.file("E.json"), fixtures::example_e());
  CHECK(run_cli({"solve", "-m", tmp.file("E.json"), "-b", tmp.file("long_b.json")}) == 1);
  CHECK(run_cli({"solve", "-m", tmp.file("E.json"), "-b", tmp.file("long_b.json"),
                 "--normalize-b", "--verify"}) == 0);

  // Singular matrix for inversion.
  Matrix singular(2, 2);
  singular << Complex{0.3, 0.0}, Complex{0.4, 0.0}, Complex{0.3, 0.0}, Complex{0.4, 0.0};
  write_matrix(tmp.file("singular.json"), singular);
  CHECK(run_cli({"inv", "-m", tmp.file("singular.json")}) == 1);
}

TEST_CASE("cli verification failure exits with code 2") {
  TempDir tmp;
  Matrix a(2, 2);
  a << Complex{0.31, 0.12}, Complex{-0.22, 0.05}, Complex{0.17, -0.31}, Complex{0.08, 0.27};
  write_matrix(tmp.file("A.json"), a);
  write_matrix(tmp.file("B.json"), Matrix(a.adjoint()));
  std::string err;
  const int code = run_cli({"matmul", "-a", tmp.file("A.json"), "-b", tmp.file("B.json"),
                            "--verify", "--tolerance", "0"},
                           nullptr, &err);
  CHECK(code == 2);
  CHECK(err.find("verification FAILED") != std::string::npos);
}

TEST_CASE("cli reports are deterministic modulo the wall-time line") {
  TempDir tmp;
  write_matrix(tmp.file("E.json"), fixtures::example_e());
  std::string first, second;
  CHECK(run_cli({"det", "-m", tmp.file("E.json"), "--verify"}, &first) == 0);
  CHECK(run_cli({"det", "-m", tmp.file("E.json"), "--verify"}, &second) == 0);
  const auto strip_wall = [](std::string text) {
    const auto pos = text.find("wall time:");
    return text.substr(0, pos);
  };
  CHECK(strip_wall(first) == strip_wall(second));
}

TEST_CASE("cli selftest smoke run") {
  std::string out;
  CHECK(run_cli({"selftest", "--seed", "3", "--count", "3"}, &out) == 0);
  CHECK(out.find("solve") != std::string::npos);
}

TEST_CASE("cli dump-w writes the completed sector blocks") {
  TempDir tmp;
  write_matrix(tmp.file("E.json"), fixtures::example_e());
  const std::string dump = tmp.file("w.json");
  CHECK(run_cli({"det", "-m", tmp.file("E.json"), "--dump-w", dump}) == 0);
  std::ifstream in(dump);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  REQUIRE(j.is_array());
  CHECK(j[0].at("sector") == 2);
  CHECK(j[0].at("rows") == 6);
}
