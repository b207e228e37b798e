// Copyright 2026 The kfp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "kfp/kfp.h"

namespace fs = std::filesystem;

namespace {

const char* kConfig = R"cfg(initial = (1 + 0.5 * cos(6 * x)) * exp(-(v - 1)^2)
grid {
  V = 8
  T = 0.25
  nx = 16
  nv = 32
}
boundary {
  type = specular
}
diagnostics {
  mass = true
}
)cfg";

std::string write_config(const std::string& name, const std::string& text) {
  auto dir = fs::temp_directory_path() / "kfp_c_api_test";
  fs::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(kfp_version()).size() > 0);
  CHECK(std::string(kfp_status_name(KFP_OK)) == "ok");
  CHECK(std::string(kfp_status_name(KFP_ERR_CONFIG)) == "config error");
  CHECK(std::string(kfp_status_name(static_cast<kfp_status>(77))) == "unknown");
}

TEST_CASE("scalar evaluators") {
  double psi = 0.0;
  REQUIRE(kfp_tricomi_psi(0.0, &psi) == KFP_OK);
  CHECK(psi == doctest::Approx(std::tgamma(1.0 / 3) / std::tgamma(1.0 / 6)).epsilon(1e-14));
  double m = 0.0;
  REQUIRE(kfp_kummer_m(0.5, 1.5, 0.0, &m) == KFP_OK);
  CHECK(m == 1.0);
  double f = 0.0;
  REQUIRE(kfp_steady(1.0, 0.0, &f) == KFP_OK);
  CHECK(f == doctest::Approx(psi).epsilon(1e-14));
  CHECK(kfp_steady(-1.0, 0.0, &f) == KFP_ERR_DOMAIN);
  CHECK(std::string(kfp_last_error()).find("x > 0") != std::string::npos);
  CHECK(kfp_tricomi_psi(1.0, nullptr) == KFP_ERR_INVALID_ARGUMENT);
  CHECK(kfp_tricomi_psi(1.0, &psi) == KFP_OK);
  CHECK(std::string(kfp_last_error()).empty());
}

TEST_CASE("tabulation") {
  kfp_table_spec spec{KFP_TABLE_PSI, -10.0, 10.0, 101, 0, 0.0, 0.0, 0};
  char* csv = nullptr;
  REQUIRE(kfp_tabulate_special(&spec, &csv) == KFP_OK);
  std::string text(csv);
  kfp_string_free(csv);
  CHECK(text.rfind("# kfp ", 0) == 0);
  int rows = 0;
  for (char c : text) rows += c == '\n';
  CHECK(rows == 103);  // stamp, header, 101 values
  const auto zero = text.find("\n0,");
  REQUIRE(zero != std::string::npos);
  CHECK(std::stod(text.substr(zero + 3)) ==
        doctest::Approx(std::tgamma(1.0 / 3) / std::tgamma(1.0 / 6)).epsilon(1e-15));
  CHECK(text.find("\n-0.6,") != std::string::npos);

  spec.first_points = 0;
  CHECK(kfp_tabulate_special(&spec, &csv) == KFP_ERR_INVALID_ARGUMENT);
  spec = {KFP_TABLE_PSI, 1.0, -1.0, 5, 0, 0, 0, 0};
  CHECK(kfp_tabulate_special(&spec, &csv) == KFP_ERR_INVALID_ARGUMENT);
  spec = {KFP_TABLE_STEADY, 0.0, 1.0, 5, 0, 0.0, 0.0, 1};
  CHECK(kfp_tabulate_special(&spec, &csv) == KFP_ERR_DOMAIN);

  spec = {KFP_TABLE_STEADY, 1e-6, 1.0, 13, 1, 0.0, 0.0, 1};
  REQUIRE(kfp_tabulate_special(&spec, &csv) == KFP_OK);
  std::vector<double> x, f;
  text = csv;
  kfp_string_free(csv);
  std::size_t pos = text.find("x,v,f\n") + 6;
  while (pos < text.size()) {
    double a, b, c;
    std::sscanf(text.c_str() + pos, "%lf,%lf,%lf", &a, &b, &c);
    x.push_back(a);
    f.push_back(c);
    pos = text.find('\n', pos) + 1;
  }
  REQUIRE(x.size() == 13);
  CHECK(std::log(f.back() / f.front()) / std::log(x.back() / x.front()) ==
        doctest::Approx(1.0 / 6).epsilon(1e-12));
}

TEST_CASE("run and report handles") {
  auto path = write_config("specular.cfg", kConfig);
  auto dir = fs::temp_directory_path() / "kfp_c_api_test" / "run";
  fs::remove_all(dir);
  kfp_report* r = nullptr;
  REQUIRE(kfp_run(path.c_str(), dir.string().c_str(), -1, 0, &r) == KFP_OK);
  CHECK(kfp_report_passed(r) == 1);
  CHECK(kfp_report_failure(r) == nullptr);
  REQUIRE(kfp_report_check_count(r) >= 1);
  const char* name = nullptr;
  const char* detail = nullptr;
  int passed = 0;
  double measured = 0, tol = 0;
  CHECK(kfp_report_check(r, 0, &name, &passed, &measured, &tol, &detail) == KFP_OK);
  CHECK(std::string(name) == "mass drift per unit time");
  CHECK(passed == 1);
  CHECK(kfp_report_check(r, 99, &name, &passed, &measured, &tol, &detail) == KFP_ERR_INVALID_ARGUMENT);
  CHECK(std::string(kfp_report_json(r)).find("\"passed\"") != std::string::npos);
  kfp_report_free(r);
  CHECK(fs::exists(dir / "report.json"));

  auto bad = write_config("bad.cfg", "grid {\n  nx = -3\n}\n");
  auto bad_dir = fs::temp_directory_path() / "kfp_c_api_test" / "bad";
  fs::remove_all(bad_dir);
  CHECK(kfp_run(bad.c_str(), bad_dir.string().c_str(), -1, 0, &r) == KFP_ERR_CONFIG);
  CHECK(r == nullptr);
  CHECK(!fs::exists(bad_dir));
  CHECK(kfp_run("/nonexistent/x.cfg", bad_dir.string().c_str(), -1, 0, &r) == KFP_ERR_IO);
}

TEST_CASE("verification suite through the handle") {
  kfp_report* r = nullptr;
  int calls = 0;
  auto progress = [](int, const char*, int, double, void* user) { ++*static_cast<int*>(user); };
  REQUIRE(kfp_verify("analytic", 20240601, 1, progress, &calls, &r) == KFP_OK);
  CHECK(calls == 3);
  CHECK(kfp_report_passed(r) == 1);
  kfp_report_free(r);
  CHECK(kfp_verify("unknown", 1, 1, nullptr, nullptr, &r) == KFP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("solver handle") {
  kfp_solver* s = nullptr;
  REQUIRE(kfp_solver_create(kConfig, &s) == KFP_OK);
  int nx = 0, nodes = 0;
  REQUIRE(kfp_solver_shape(s, &nx, &nodes) == KFP_OK);
  CHECK(nx == 16);
  CHECK(nodes == 33);
  double m0 = 0, m1 = 0, t = 0;
  kfp_solver_mass(s, &m0);
  REQUIRE(kfp_solver_step(s, 10) == KFP_OK);
  kfp_solver_mass(s, &m1);
  kfp_solver_time(s, &t);
  CHECK(t > 0.0);
  CHECK(std::abs(m1 - m0) < 1e-8 * m0);
  std::vector<double> buf(nx * nodes);
  CHECK(kfp_solver_field(s, buf.data(), buf.size()) == KFP_OK);
  CHECK(kfp_solver_field(s, buf.data(), 3) == KFP_ERR_INVALID_ARGUMENT);
  CHECK(kfp_solver_step(s, -1) == KFP_ERR_INVALID_ARGUMENT);
  kfp_solver_free(s);
  CHECK(kfp_solver_create("grid {\n  bogus = 1\n}\n", &s) == KFP_ERR_CONFIG);
  CHECK(std::string(kfp_last_error()).find("bogus") != std::string::npos);
}
