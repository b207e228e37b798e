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
#include <string_view>
#include <vector>

#include "kfp/diagnostics.hpp"
#include "kfp/solver.hpp"

namespace kfp::io {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

/// 64-bit FNV-1a digest as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

/// Provenance written into every artifact.
struct Stamp {
  std::string version;
  std::string config_hash;
};

/// CSV with a "# kfp <version> config <hash>" line and columns t,x,v,f.
std::string field_csv(const SolutionField& field, const Stamp& stamp);

/// Reads a t,x,v,f (or x,v,f) CSV dump onto a tensor grid. Lines starting
/// with '#' are skipped. Throws io_error for unreadable files and
/// config_error for malformed content or missing grid nodes.
diagnostics::GriddedField read_field_csv(const std::string& path);

/// One JSON object per line.
std::string ledger_jsonl(const std::vector<LedgerEntry>& ledger, const Stamp& stamp);

/// Columns r,osc,nodes.
std::string profile_csv(const diagnostics::OscillationProfile& p, const Stamp& stamp);

/// Writes text, creating parent directories. Throws io_error.
void write_file(const std::string& path, const std::string& text);
/// Throws io_error naming the path.
std::string read_file(const std::string& path);

}  // namespace kfp::io
