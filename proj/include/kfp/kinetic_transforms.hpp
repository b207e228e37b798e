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

#include "kfp/coefficients.hpp"
#include "kfp/phase.hpp"

namespace kfp {

/// T_{z0,r}(t, x, v) = (t0 + r^2 t, x0 + r^3 x + r^2 t v0, v0 + r v).
PhasePoint scale_map(const PhasePoint& z0, double r, const PhasePoint& z);

/// Q_r(z0): t0 - r^2 < t <= t0, |x - x0 - (t - t0) v0| < r^3, |v - v0| < r.
struct KineticCylinder {
  PhasePoint center;
  double r = 1.0;

  bool contains(const PhasePoint& z) const;
};

/// Bracket weight <v>^q = (1 + |v|^2)^{q/2}.
struct WeightSpec {
  double q = 0.0;

  double operator()(double v) const;
  double operator()(const std::vector<double>& v) const;
};

/// Coefficients of the equation satisfied by F = <v>^q f:
///   Bd = -q A v / <v>^2, drift B + Bd,
///   c' = c + q^2 A v^2 / <v>^4 - q B v / <v>^2, source <v>^q s.
/// A divergence drift Bd0 already present is kept and adds -q Bd0 v / <v>^2
/// to c'.
CoefficientField weighted_coefficients(const CoefficientField& k, double q);

}  // namespace kfp
