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

#include "kfp/error.hpp"
#include "kfp/solver.hpp"

namespace kfp::iteration {

struct IterationConfig {
  /// Damping of the specular scheme, in [0, 1]. a = 1 is solved directly.
  double a = 0.5;
  /// Initial slab length of the diffuse scheme, in (0, 1].
  double tau = 1.0;
  /// Slab contraction above this factor halves tau.
  double contraction_target = 0.5;
  int max_halvings = 6;
  int max_iterations = 200;
  /// Stop once delta_n <= tolerance * max(delta_1, floor).
  double tolerance = 1e-20;
  /// Non-decreasing defects over this many iterations signal divergence.
  int divergence_window = 5;
  SolverConfig solver;
};

/// One fixed-point iterate. delta is the squared |n.v|-weighted L2 norm
/// (over walls and time levels) of the change in incoming traces produced by
/// this iterate; volume is the L2 norm of f_n - f_{n-1} at the final time.
struct IterationRecord {
  int iteration = 0;
  double delta = 0.0;
  double volume = 0.0;
  double ratio = 0.0;     // delta_n / delta_{n-1}; 0 for the first iterate
  double delta_lp = 0.0;  // sup over time of the weighted L^6 incoming defect
  double upsilon_change = 0.0;  // max change of the wall fluxes (diffuse scheme)
};

struct SlabRecord {
  int index = 0;
  double t_start = 0.0;
  double tau = 0.0;
  int halvings = 0;
  int iterations = 0;
  /// Largest sqrt(delta_{n+1} / delta_n) over the resolved iterates.
  double contraction = 0.0;
  /// Same factor in the weighted L^6 trace norm.
  double contraction_lp = 0.0;
  double boundary_residual = 0.0;
  std::vector<IterationRecord> records;
};

struct IterationTrace {
  std::string scheme;  // "damped_specular", "specular_direct" or "diffuse_slab"
  double a = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<IterationRecord> records;
  std::vector<SlabRecord> slabs;
  /// || gamma_- f - B f || of the returned field in the delta norm (not squared).
  double boundary_residual = 0.0;

  std::string to_json() const;
};

struct IterationResult {
  SolutionField field;
  IterationTrace trace;
};

/// Thrown when the defect stops decreasing; carries the trace so far.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, IterationTrace trace)
      : Error(ErrorCode::divergence, what), trace_(std::move(trace)) {}
  const IterationTrace& trace() const { return trace_; }

 private:
  IterationTrace trace_;
};

/// Solves problem up to t_end by gamma_- f_{n+1} = a R gamma_+ f_n with
/// gamma_- f_1 = 0, one full inflow solve per iterate. The spec of problem
/// is ignored. a = 1 runs the direct specular closure instead.
IterationResult specular_iterate(const Problem& problem, double t_end,
                                 const IterationConfig& cfg);

/// Solves problem (which must carry a Diffuse spec) up to t_end on time slabs
/// of length tau. On each slab gamma_- f_{n+1} = N f_n with gamma_- f_0 = 0;
/// tau is halved while the measured contraction exceeds the target.
IterationResult diffuse_slab_iterate(const Problem& problem, double t_end,
                                     const IterationConfig& cfg);

/// Squared |n.v|-weighted L2 norm over walls and time levels of the
/// difference of two incoming-trace tables table[n][w][j].
double trace_defect(const std::vector<std::vector<std::vector<double>>>& a,
                    const std::vector<std::vector<std::vector<double>>>& b,
                    const VelocityGrid& grid, double dt);

}  // namespace kfp::iteration
