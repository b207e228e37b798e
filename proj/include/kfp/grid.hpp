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

/// Vertex-centred velocity nodes -V + j h, j = 0..n, with trapezoid weights.
/// The node set is symmetric, so node n - j is the mirror image of node j.
struct VelocityGrid {
  double V = 0.0;
  int n = 0;
  double h = 0.0;
  std::vector<double> v;
  std::vector<double> w;

  static VelocityGrid uniform(double V, int intervals);

  int size() const { return n + 1; }
  int mirror(int j) const { return n - j; }
  bool is_box_edge(int j) const { return j == 0 || j == n; }
};

/// Cell-centred positions on (0, X).
struct SpaceGrid {
  double X = 0.0;
  int n = 0;
  double h = 0.0;
  std::vector<double> x;

  static SpaceGrid uniform(double X, int cells);

  int size() const { return n; }
};

}  // namespace kfp
