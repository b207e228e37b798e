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
#include "kfp/grid.hpp"

#include "kfp/error.hpp"

namespace kfp {

VelocityGrid VelocityGrid::uniform(double V, int intervals) {
  if (!(V > 0.0)) throw Error(ErrorCode::invalid_argument, "velocity bound must be positive");
  if (intervals < 2 || intervals % 2 != 0)
    throw Error(ErrorCode::invalid_argument,
                "velocity intervals must be even and at least 2 so that v = 0 is a node");
  VelocityGrid g;
  g.V = V;
  g.n = intervals;
  g.h = 2.0 * V / intervals;
  g.v.resize(intervals + 1);
  g.w.assign(intervals + 1, g.h);
  for (int j = 0; j <= intervals; ++j) g.v[j] = g.h * (j - intervals / 2);
  g.w.front() = g.w.back() = 0.5 * g.h;
  return g;
}

SpaceGrid SpaceGrid::uniform(double X, int cells) {
  if (!(X > 0.0)) throw Error(ErrorCode::invalid_argument, "domain length must be positive");
  if (cells < 1) throw Error(ErrorCode::invalid_argument, "need at least one cell");
  SpaceGrid g;
  g.X = X;
  g.n = cells;
  g.h = X / cells;
  g.x.resize(cells);
  for (int i = 0; i < cells; ++i) g.x[i] = (i + 0.5) * g.h;
  return g;
}

}  // namespace kfp
