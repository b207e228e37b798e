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

#include <string>
#include <vector>

#include "kfp/config.hpp"
#include "kfp/diagnostics.hpp"

namespace kfp::pipeline {

struct RunOutcome {
  diagnostics::DiagnosticsReport report;
  /// Paths of the files written, relative to the output directory.
  std::vector<std::string> files;
  /// Set when the run stopped early; failure.json then records the error.
  bool runtime_failure = false;
  std::string failure;
};

/// Executes the configured pipeline and writes field CSVs, ledger.jsonl and
/// report.json into out_dir. Runtime errors do not propagate: the artifacts
/// written so far are kept and failure.json records the error. Output is a
/// pure function of the configuration and seed.
RunOutcome run_config(const config::RunConfig& cfg, const std::string& out_dir);

}  // namespace kfp::pipeline
