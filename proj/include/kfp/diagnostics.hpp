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
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "kfp/error.hpp"
#include "kfp/phase.hpp"
#include "kfp/solver.hpp"

namespace kfp::diagnostics {

/// Samples of f on a tensor grid t x x x v, stored f[(k * nx + i) * nv + j].
/// A single time level describes a stationary or frozen field.
struct GriddedField {
  std::vector<double> t{0.0};
  std::vector<double> x, v;
  std::vector<double> f;

  double at(std::size_t k, std::size_t i, std::size_t j) const {
    return f[(k * x.size() + i) * v.size() + j];
  }
  bool stationary() const { return t.size() == 1; }

  static GriddedField sample(const std::function<double(double, double)>& fn,
                             std::vector<double> x, std::vector<double> v);
  static GriddedField from_solution(const SolutionField& field);
};

enum class Metric { kinetic, euclidean };

/// Kinetic distance: the smallest r with the earlier point in the closed
/// cylinder Q_r of the later one,
///   max(|dt|^{1/2}, |dx - dt v0|^{1/3}, |dv|).
/// For stationary fields dt = 0.
double kinetic_distance(const PhasePoint& a, const PhasePoint& b);
double distance(const PhasePoint& a, const PhasePoint& b, Metric metric);

struct Region {
  double t_min = -std::numeric_limits<double>::infinity();
  double t_max = std::numeric_limits<double>::infinity();
  double x_min = -std::numeric_limits<double>::infinity();
  double x_max = std::numeric_limits<double>::infinity();
  double v_min = -std::numeric_limits<double>::infinity();
  double v_max = std::numeric_limits<double>::infinity();
};

struct HolderOptions {
  Metric metric = Metric::kinetic;
  std::size_t random_pairs = 100000;
  std::uint64_t seed = 20240601;
};

struct HolderEstimate {
  double seminorm = 0.0;
  std::size_t pairs = 0;
  PhasePoint argmax_a, argmax_b;
};

/// max |f(z) - f(z')| / dist(z, z')^alpha over all grid-adjacent pairs in the
/// region and random_pairs random pairs. Throws invalid_argument when the
/// region holds fewer than two nodes or alpha is outside (0, 1].
HolderEstimate holder_seminorm(const GriddedField& field, double alpha, const Region& region = {},
                               const HolderOptions& options = {});

/// Least-squares line through (log x, log y).
struct ExponentFit {
  std::vector<double> log_x, log_y;
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of the log fit.
  double residual = 0.0;
  /// 95% confidence half-width of the slope.
  double half_width = 0.0;
};

/// Needs at least five samples with positive x and y.
ExponentFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

struct Ladder {
  double r0 = 1.0;
  double ratio = 0.5;
  int depth = 8;
};

struct OscillationProfile {
  std::vector<double> r;
  std::vector<double> osc;
  std::vector<std::size_t> nodes;
  /// Slope of log osc against log r over the cylinders with at least two
  /// nodes and positive oscillation.
  double slope = 0.0;
  double residual = 0.0;
  int usable = 0;
};

/// Oscillation of f over the nested cylinders Q_{r_k}(z0) intersected with
/// the grid. Stationary fields are treated as constant in time. Throws
/// invalid_argument with fewer than three usable cylinders.
OscillationProfile oscillation_decay(const GriddedField& field, const PhasePoint& z0,
                                     const Ladder& ladder);

struct BoundaryExponents {
  ExponentFit alpha_x;          // f(x, 0) over x in [1e-6, 1e-2]
  ExponentFit alpha_v;          // f(1e-8 |v|^3, -v) over |v| in [1e-3, 1e-1]
  ExponentFit alpha_v_literal;  // f(1e-8, -v) over the same velocities
  bool flagged = false;         // a fit residual above residual_limit
};

/// Log-log exponent fits at the singular boundary point (0, 0). The default
/// field is the analytic steady solution. alpha_v samples along x = 1e-8 |v|^3,
/// on which -v^3/(9x) is fixed, so it measures the x -> 0+ profile.
BoundaryExponents fit_boundary_exponents(
    const std::function<double(double, double)>& f = {}, int samples = 41,
    double residual_limit = 1e-3);

/// max |f| minus the running data bound of the field.
double max_principle_excess(const SolutionField& field);

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct DiagnosticsReport {
  bool passed = false;
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, double>> parameters;
  /// Named JSON documents (ledgers, fits, iteration traces).
  std::vector<std::pair<std::string, std::string>> sections;
  std::string config_hash;
  std::string version;

  std::vector<std::string> failing() const;
  std::string to_json() const;
};

/// Aggregates checks; overall PASS iff every check passed. Throws
/// invalid_argument on an empty list.
DiagnosticsReport verdict(std::vector<CheckResult> checks,
                          std::vector<std::pair<std::string, double>> parameters = {},
                          std::string config_hash = {});

}  // namespace kfp::diagnostics
