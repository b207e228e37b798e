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

#include <vector>

namespace kfp {

/// A point z = (t, x, v) of time x position x velocity. Position and velocity
/// carry the same dimension.
struct PhasePoint {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> v;

  std::size_t dimension() const { return x.size(); }
};

}  // namespace kfp
