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
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "kfp/error.hpp"
#include "kfp/io.hpp"

using namespace kfp;

namespace {

std::string temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "kfp_io_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

SolutionField small_field() {
  Problem p;
  p.xgrid = SpaceGrid::uniform(1.0, 4);
  p.vgrid = VelocityGrid::uniform(2.0, 4);
  p.dt = 0.1;
  p.coeffs = CoefficientField::constant(1.0, 0.0, 0.0, 0.0);
  p.initial = [](double, double x, double v) { return x * x + 0.1 * v + 1.0 / 3.0; };
  Solver s(p, {});
  return s.field();
}

}  // namespace

TEST_CASE("doubles round-trip through their shortest text") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 1000; ++k) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    CHECK(std::strtod(io::format_double(x).c_str(), nullptr) == x);
  }
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(1.0) == "1");
}

TEST_CASE("FNV-1a digest matches the reference vectors") {
  CHECK(io::fnv1a_hex("") == "cbf29ce484222325");
  CHECK(io::fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(io::fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("field dumps carry the stamp and read back exactly") {
  auto f = small_field();
  io::Stamp st{"9.9.9", "0123456789abcdef"};
  const auto text = io::field_csv(f, st);
  CHECK(text.rfind("# kfp 9.9.9 config 0123456789abcdef\nt,x,v,f\n", 0) == 0);
  const auto path = temp_path("field.csv");
  io::write_file(path, text);
  auto g = io::read_field_csv(path);
  REQUIRE(g.x.size() == 4);
  REQUIRE(g.v.size() == 5);
  CHECK(g.stationary());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 5; ++j) CHECK(g.at(0, i, j) == f.at(i, j));
  CHECK(io::field_csv(f, st) == text);
}

TEST_CASE("malformed field dumps are rejected") {
  auto expect = [](const std::string& body, ErrorCode code) {
    const auto path = temp_path("bad.csv");
    io::write_file(path, body);
    try {
      io::read_field_csv(path);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == code);
    }
  };
  expect("x,v,f\n0,0,1\n0,1,2\n1,0,3\n", ErrorCode::config_error);  // incomplete grid
  expect("x,v\n0,0\n", ErrorCode::config_error);                     // no f column
  expect("x,v,f\n0,0,abc\n", ErrorCode::config_error);
  expect("x,v,f\n0,0,1\n0,0,2\n1,0,3\n1,1,4\n", ErrorCode::config_error);
  try {
    io::read_field_csv(temp_path("missing/nowhere.csv"));
    FAIL("expected io_error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io_error);
  }
}

TEST_CASE("ledger lines are JSON with a stamp record first") {
  LedgerEntry e;
  e.step = 3;
  e.residual = 1e-9;
  const auto text = io::ledger_jsonl({e, e}, {"1.0", "ff"});
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(nlohmann::json::parse(line)["config_hash"] == "ff");
  int n = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    CHECK(j["step"] == 3);
    CHECK(j["residual"] == 1e-9);
    ++n;
  }
  CHECK(n == 2);
}
