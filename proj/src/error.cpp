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
#include "kfp/error.hpp"

namespace kfp {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::domain_error: return "domain error";
    case ErrorCode::not_on_boundary: return "point not on boundary";
    case ErrorCode::out_of_chart: return "point outside chart";
    case ErrorCode::no_convergence: return "no convergence";
    case ErrorCode::accuracy_unreachable: return "accuracy unreachable";
    case ErrorCode::cfl_violation: return "CFL violation";
    case ErrorCode::missing_trace: return "missing trace";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::config_error: return "config error";
    case ErrorCode::io_error: return "I/O error";
    case ErrorCode::check_failed: return "check failed";
  }
  return "unknown error";
}

}  // namespace kfp
