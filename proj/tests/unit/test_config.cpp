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
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>

#include "doctest.h"
#include "kfp/config.hpp"
#include "kfp/error.hpp"

using namespace kfp;
using namespace kfp::config;

namespace {

const char* kFull = R"cfg(# a complete run
seed = 7
threads = 1
initial = exp(-v^2) * (1 + x)   # trailing comment
box = 0

grid {
  X = 1
  V = 4
  T = 0.5
  nx = 20
  nv = 20
  cfl = 0.5
}

coefficients {
  A = 1 + 0.25 * sin(pi * x)
  B = "0.1 * cos(x)"
  c = -0.5
  lambda = 2
}

boundary {
  type = inflow
  g = exp(-v^2) * (1 + 0.5 * sin(3 * t))
}

scheme {
  type = imex_upwind
}

pipeline {
  mode = march
}

diagnostics {
  mass = true
  ledger = true
  ledger_q = 1
  holder {
    alpha = 0.5
    metric = euclidean
  }
  oscillation {
    x0 = 0.5
    v0 = 0.2
    depth = 4
  }
}

output {
  every = 5
}
)cfg";

std::string config_error(const std::string& text) {
  try {
    parse_run_config(text, "t.cfg");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::config_error);
    return e.what();
  }
  FAIL("expected a configuration error");
  return {};
}

}  // namespace

TEST_CASE("block parser reads nested blocks and comments") {
  auto n = parse_blocks("a = 1\nb {\n  c = \"x # y\"  # note\n  d {\n    e = 2\n  }\n}\n");
  CHECK(n.values.at("a").value == "1");
  CHECK(n.blocks.at("b")->values.at("c").value == "x # y");
  CHECK(n.blocks.at("b")->values.at("c").line == 3);
  CHECK(n.blocks.at("b")->blocks.at("d")->values.at("e").value == "2");
}

TEST_CASE("a complete configuration parses") {
  auto cfg = parse_run_config(kFull, "full.cfg");
  CHECK(cfg.seed == 7);
  CHECK(cfg.grid.nx == 20);
  CHECK(cfg.boundary.type == "inflow");
  CHECK(cfg.boundary.g.depends_on_t());
  CHECK(cfg.diagnostics.holder.enabled);
  CHECK(cfg.diagnostics.holder.metric == diagnostics::Metric::euclidean);
  CHECK(cfg.diagnostics.oscillation.ladder.depth == 4);
  CHECK(cfg.output.every == 5);
  CHECK(cfg.hash.size() == 16);
  auto p = make_problem(cfg);
  CHECK(p.xgrid.n == 20);
  CHECK(p.vgrid.n == 20);
  CHECK(p.dt * step_count(cfg) == doctest::Approx(0.5));
  CHECK(p.dt * 4.0 / p.xgrid.h <= 0.5 + 1e-12);
  CHECK(p.coeffs.a(0.0, 0.5, 0.0) == doctest::Approx(1.25));
  CHECK(p.coeffs.b(0.0, 0.0, 0.0) == doctest::Approx(0.1));
  CHECK(!p.coeffs.time_dependent);
  CHECK(p.initial(0.0, 1.0, 0.0) == doctest::Approx(2.0));
  auto* in = std::get_if<boundary::Inflow>(&p.spec);
  REQUIRE(in);
  CHECK(in->time_dependent);
}

TEST_CASE("defaults give a small absorbing run") {
  auto cfg = parse_run_config("", "empty.cfg");
  auto p = make_problem(cfg);
  CHECK(std::holds_alternative<boundary::Inflow>(p.spec));
  CHECK(cfg.pipeline.mode == "march");
}

TEST_CASE("same text gives the same hash") {
  CHECK(parse_run_config(kFull).hash == parse_run_config(kFull).hash);
  CHECK(parse_run_config(kFull).hash != parse_run_config(std::string(kFull) + "\n").hash);
}

TEST_CASE("unknown keys and blocks are rejected with their line") {
  auto m = config_error("grid {\n  nx = 10\n  dx = 3\n}\n");
  CHECK(m.find("t.cfg:3") != std::string::npos);
  CHECK(m.find("grid.dx") != std::string::npos);
  m = config_error("geometry {\n}\n");
  CHECK(m.find("unknown block 'geometry'") != std::string::npos);
  m = config_error("diagnostics {\n  holder {\n    alfa = 0.5\n  }\n}\n");
  CHECK(m.find("diagnostics.holder.alfa") != std::string::npos);
}

TEST_CASE("malformed text and out-of-range values are rejected") {
  for (const char* bad : {
           "grid {\n nx = 10\n",                        // unclosed block
           "}\n",                                        // stray brace
           "grid {\n nx = ten\n}\n",                    // not a number
           "grid {\n nv = 11\n}\n",                     // odd velocity intervals
           "grid {\n V = -1\n}\n",                      // out of range
           "grid {\n nx = 10\n nx = 20\n}\n",           // duplicate
           "boundary {\n type = mirror\n}\n",           // unknown variant
           "boundary {\n type = inflow\n}\n",           // missing data
           "boundary {\n type = damped_specular\n a = 1.5\n}\n",
           "coefficients {\n A = 1 +\n}\n",             // bad expression
           "coefficients {\n A = 5\n lambda = 2\n}\n",  // violates ellipticity
           "scheme {\n type = viscous\n}\n",            // epsilon missing
           "scheme {\n type = viscous\n epsilon = 0.1\n}\nboundary {\n type = specular\n}\n",
           "pipeline {\n mode = diffuse_slab\n}\n",
           "grid {\n dt = 1\n}\n",                      // CFL
           "seed = 1 2\n",
           "just words\n",
           "a = \"unterminated\n",
       })
    config_error(bad);
}

TEST_CASE("a missing file is an io error") {
  try {
    load_run_config("/nonexistent/run.cfg");
    FAIL("expected io_error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io_error);
  }
}

TEST_CASE("tabulated inflow data") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "kfp_config_table";
  fs::create_directories(dir);
  std::ofstream(dir / "g.csv") << "# wall data\nx,v,g\n0,0,1\n0,2,3\n2,-1,5\n2,-3,7\n";
  const std::string body = "grid {\n  X = 2\n  V = 4\n}\nboundary {\n  type = inflow\n  g_table = g.csv\n}\n";
  auto cfg = parse_run_config(body, (dir / "run.cfg").string());
  CHECK(cfg.boundary.g_tabulated);
  const auto& g = cfg.boundary.g_tabulated;
  CHECK(g(0.0, 0.0, 1.0) == doctest::Approx(2.0));
  CHECK(g(0.0, 0.0, 2.0) == 3.0);
  CHECK(g(0.0, 0.0, 3.0) == 0.0);  // outside the rows
  CHECK(g(0.0, 2.0, -2.0) == doctest::Approx(6.0));
  auto p = make_problem(cfg);
  CHECK(std::holds_alternative<boundary::Inflow>(p.spec));

  CHECK(config_error("boundary {\n  type = inflow\n  g_table = /no/such/file.csv\n}\n").find("cannot read") !=
        std::string::npos);
  std::ofstream(dir / "bad.csv") << "x,v\n0,1\n";
  CHECK(config_error("boundary {\n  type = inflow\n  g_table = " + (dir / "bad.csv").string() + "\n}\n")
            .find("columns x, v, g") != std::string::npos);
  std::ofstream(dir / "wall.csv") << "x,v,g\n0.5,1,1\n";
  CHECK(config_error("boundary {\n  type = inflow\n  g_table = " + (dir / "wall.csv").string() + "\n}\n")
            .find("x must be 0 or 1") != std::string::npos);
  CHECK(config_error("boundary {\n  type = inflow\n  g = 1\n  g_table = " + (dir / "g.csv").string() + "\n}\n")
            .find("exclusive") != std::string::npos);
}
