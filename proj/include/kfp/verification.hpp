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
#include <string>
#include <vector>

#include "kfp/diagnostics.hpp"

namespace kfp::verification {

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  int threads = 1;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::vector<diagnostics::CheckResult> checks;
  double seconds = 0.0;
};

/// Largest relative residual |v f_x - f_vv| / (|v f_x| + |f_vv| + |f|) of
/// the steady solution on an n x n grid over [0.01, 10] x [-5, 5].
struct ResidualProbe {
  double max_relative = 0.0;
  double x = 0.0;
  double v = 0.0;
};
ResidualProbe steady_residual_probe(int n = 200);

/// Criteria 1..11 in order.
int criterion_count();
std::string criterion_title(int id);

/// Runs one acceptance criterion end to end. Throws invalid_argument for an
/// unknown id; failures inside a criterion become failed checks.
CriterionResult run_criterion(int id, const VerifyOptions& options = {});

/// Registered suites: all, analytic, solver, iteration, geometry, viscosity.
std::vector<std::string> suite_names();
/// Criterion ids of a suite. Throws invalid_argument for an unknown name.
std::vector<int> suite(const std::string& name);

/// Runs a suite and aggregates its checks into one report. The per-criterion
/// results are appended to details when given.
diagnostics::DiagnosticsReport run_suite(const std::string& name, const VerifyOptions& options = {},
                                         std::vector<CriterionResult>* details = nullptr);

}  // namespace kfp::verification
