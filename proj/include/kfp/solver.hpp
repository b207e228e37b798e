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

#include <array>
#include <vector>

#include "kfp/boundary.hpp"
#include "kfp/coefficients.hpp"
#include "kfp/grid.hpp"

namespace kfp {

enum class Scheme { imex_upwind, viscous };

struct SolverConfig {
  Scheme scheme = Scheme::imex_upwind;
  /// x-viscosity of the regularised problem; must be positive for Scheme::viscous.
  double epsilon = 0.0;
  double cfl_limit = 0.9;
  /// Switch the velocity drift to one-sided differences where the cell
  /// Peclet number exceeds one, which keeps the implicit matrix monotone.
  bool peclet_upwind = true;
  /// Worker threads for the per-cell velocity solves.
  int threads = 1;
  /// Keep the traces of every step (needed by the fixed-point iterations).
  bool record_traces = false;
};

/// One 1D kinetic initial-boundary value problem on (0, X) x (-V, V).
struct Problem {
  SpaceGrid xgrid;
  VelocityGrid vgrid;
  double dt = 0.0;
  CoefficientField coeffs;
  boundary::BoundarySpec spec;
  boundary::PhaseFn initial;   // f(0, x, v); zero when empty
  boundary::PhaseFn box_data;  // Dirichlet data at v = -V and v = V; zero when empty
  bool box_data_time_dependent = true;
  /// Start time; tabulated inflow rows are indexed by steps from t0.
  double t0 = 0.0;
  /// Initial grid function (i * nv + j); replaces `initial` when non-empty.
  std::vector<double> initial_values;
};

/// Grid function over positions x velocities at one time, with its traces on
/// both walls. trace[w][j] holds gamma f at velocity node j of wall w: the
/// boundary cell value on outgoing and grazing nodes and the applied
/// boundary value on incoming nodes.
struct SolutionField {
  SpaceGrid xgrid;
  VelocityGrid vgrid;
  double t = 0.0;
  int step = 0;
  std::vector<double> f;
  std::array<std::vector<double>, 2> trace;
  /// Running maximum of |initial|, |incoming traces| and |box data| applied so far.
  double data_bound = 0.0;

  double at(int i, int j) const { return f[static_cast<std::size_t>(i) * vgrid.size() + j]; }
  double& at(int i, int j) { return f[static_cast<std::size_t>(i) * vgrid.size() + j]; }
  boundary::Wall wall(int w) const;
  double mass() const;
  double max_abs() const;
};

struct TraceSplit {
  std::array<std::vector<double>, 2> outgoing;  // zero off the outgoing nodes
  std::array<std::vector<double>, 2> incoming;  // zero off the incoming nodes
  std::array<std::vector<double>, 2> measure;   // |n v_j| w_j
};

TraceSplit extract_traces(const SolutionField& field);

/// Terms of the discrete weighted energy balance of one step from "before" to
/// "after", weight phi = <v>^{2q}:
///   residual = dE + boundary + dissipation - rhs.
struct LedgerEntry {
  int step = 0;
  double t = 0.0;
  double dt = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double energy_change = 0.0;
  double boundary = 0.0;
  double dissipation = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double mass_change = 0.0;
  double mass_boundary_flux = 0.0;
};

LedgerEntry energy_ledger(const SolutionField& before, const SolutionField& after,
                          const CoefficientField& coeffs, double q);

class Solver {
 public:
  Solver(Problem problem, SolverConfig cfg);

  /// Advances one time step.
  void step();
  void advance(int steps);
  /// Steps until max|f^{n+1} - f^n| / dt <= tol * max(1, max|f|) or t >= t_max.
  /// Returns true when the steady criterion was met.
  bool run_to_steady(double tol, double t_max);

  const SolutionField& field() const { return field_; }
  const Problem& problem() const { return problem_; }
  const SolverConfig& config() const { return cfg_; }

  /// Traces of each completed time level: history[n][w][j], n = 0..steps.
  const std::vector<std::array<std::vector<double>, 2>>& trace_history() const {
    return history_;
  }

 private:
  void refresh_traces(SolutionField& fld, double t, int step);
  void transport(const SolutionField& from, std::vector<double>& out) const;
  void diffuse_x(std::vector<double>& g) const;
  void solve_velocity(std::vector<double>& g, double t_new);
  void build_velocity_matrices(double t, std::vector<double>& a, std::vector<double>& c,
                               std::vector<double>& m) const;

  Problem problem_;
  SolverConfig cfg_;
  SolutionField field_;
  bool cached_ = false;
  // factorised tridiagonal systems per cell: sub-diagonal, modified super
  // diagonal and inverse pivots, each nx * (nv - 1)
  std::vector<double> mat_a_, mat_c_, mat_m_;
  std::vector<double> xdiff_c_, xdiff_m_;
  // boundary values read by the transport sweep at the current level
  std::array<std::vector<double>, 2> ghost_;
  // cached boundary data when it does not depend on time
  std::array<std::vector<double>, 2> static_inflow_;
  std::vector<double> static_box_;  // 2 per cell
  std::vector<std::array<std::vector<double>, 2>> history_;
};

/// Doubles the domain across one wall with f(t, -y, -w) on the reflected side
/// (left wall: x -> -x; right wall: x -> 2X - x).
struct MirrorExtension {
  SpaceGrid xgrid;  // the doubled interval, shifted so that it starts at 0
  VelocityGrid vgrid;
  std::vector<double> f;
  int interface_cell = 0;  // the interface lies between cells interface_cell - 1 and interface_cell
  /// max_j |f_w(v_j) - f_w(-v_j)| with f_w the linear extrapolation of the
  /// interior cells to the wall; zero when the field is mirror continuous.
  double interface_jump = 0.0;
};

MirrorExtension mirror_extended_field(const SolutionField& field,
                                      const boundary::BoundarySpec& spec, int wall);

/// Coefficients of the mirrored problem: A(x', v') = A(x, v), B -> -B,
/// Bd -> -Bd, c and s unchanged, evaluated at (x, v) = (2 x_w - x', -v').
CoefficientField reflect_coefficients(const CoefficientField& k, double wall_x);

}  // namespace kfp
