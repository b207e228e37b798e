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
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kfp/diagnostics.hpp"
#include "kfp/expression.hpp"
#include "kfp/iteration.hpp"
#include "kfp/solver.hpp"

namespace kfp::config {

/// Parsed text of the block format:
///
///   # comment
///   key = value          (value runs to '#' or end of line, or is "quoted")
///   block {
///     key = value
///   }
struct Node {
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, Entry> values;
  std::map<std::string, std::shared_ptr<Node>> blocks;
  int line = 0;
};

/// Throws config_error with "origin:line: message".
Node parse_blocks(const std::string& text, const std::string& origin = "config");

struct GridConfig {
  double X = 1.0;
  double V = 6.0;
  double T = 1.0;
  int nx = 50;
  int nv = 50;
  /// Time step; when zero, dt = cfl * h_x / V.
  double dt = 0.0;
  double cfl = 0.5;
};

struct CoefficientConfig {
  Expression A = Expression::constant(1.0);
  Expression B, c, s;
  double lambda = 2.0;
};

struct BoundaryConfig {
  /// absorbing, inflow, diffuse, specular or damped_specular
  std::string type = "absorbing";
  Expression g;       // inflow data
  /// Inflow data read from a CSV file with columns x, v, g (x picks the
  /// wall); linear in v between rows and zero outside the tabulated range.
  std::string g_table;
  boundary::PhaseFn g_tabulated;
  double a = 1.0;     // damping
  double theta = 1.0; // wall temperature of the diffuse Maxwellian
  Expression weight;  // diffuse weight; Maxwellian(theta) when empty
  bool unit_flux = true;
};

struct PipelineConfig {
  /// march, steady, specular_iteration or diffuse_slab
  std::string mode = "march";
  double steady_tolerance = 1e-6;
  double tau = 1.0;
  int max_iterations = 200;
  double tolerance = 1e-20;
};

struct HolderConfig {
  bool enabled = false;
  double alpha = 0.5;
  diagnostics::Metric metric = diagnostics::Metric::kinetic;
  std::size_t random_pairs = 100000;
  double limit = 0.0;  // fail when the seminorm exceeds a positive limit
};

struct OscillationConfig {
  bool enabled = false;
  double x0 = 0.5, v0 = 0.0;
  diagnostics::Ladder ladder;
  double min_slope = 0.0;  // fail when the fitted slope is not above this
};

struct DiagnosticsConfig {
  bool mass = false;
  double mass_tolerance = 1e-6;  // relative drift per unit time
  bool ledger = false;
  double ledger_q = 0.0;
  double ledger_tolerance = 0.0;  // positive: max |residual| allowed
  bool max_principle = false;
  bool compare_steady = false;
  double steady_error_tolerance = 0.05;
  bool boundary_exponents = false;
  bool steady_residual = false;
  HolderConfig holder;
  OscillationConfig oscillation;
};

struct OutputConfig {
  bool fields = true;
  int every = 0;  // also dump every n steps when positive
  bool ledger = true;
};

struct RunConfig {
  std::string origin;
  std::string text;
  std::string hash;  // FNV-1a of text
  std::uint64_t seed = 1;
  int threads = 1;
  GridConfig grid;
  CoefficientConfig coefficients;
  BoundaryConfig boundary;
  Expression initial;
  Expression box;
  SolverConfig scheme;
  PipelineConfig pipeline;
  DiagnosticsConfig diagnostics;
  OutputConfig output;
};

/// Parses and validates a run configuration. Unknown keys and blocks,
/// out-of-range numbers and malformed expressions are config_error.
RunConfig parse_run_config(const std::string& text, const std::string& origin = "config");
/// Reads a file (io_error when unreadable) and parses it.
RunConfig load_run_config(const std::string& path);

/// The solver problem described by a configuration.
Problem make_problem(const RunConfig& cfg);
/// Steps needed to reach grid.T with the configured dt.
int step_count(const RunConfig& cfg);
iteration::IterationConfig make_iteration_config(const RunConfig& cfg);

}  // namespace kfp::config
