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

namespace kfp {

/// Scalar (d = 1) coefficients of
///   f_t + v f_x = (A f_v + Bd f)_v + B f_v + c f + s.
/// Bd is an optional divergence-form drift; it is zero for the plain
/// equation and appears after the velocity-weight transform.
struct CoefficientField {
  using Fn = std::function<double(double t, double x, double v)>;

  Fn A;
  Fn B;
  Fn c;
  Fn s;
  Fn Bd;
  double lambda = 2.0;
  /// True when any of A, B, Bd, c depends on t.
  bool time_dependent = false;

  static CoefficientField constant(double A, double B, double c, double s,
                                   double lambda = 2.0);

  double a(double t, double x, double v) const { return A(t, x, v); }
  double b(double t, double x, double v) const { return B ? B(t, x, v) : 0.0; }
  double zeroth(double t, double x, double v) const { return c ? c(t, x, v) : 0.0; }
  double source(double t, double x, double v) const { return s ? s(t, x, v) : 0.0; }
  double bdiv(double t, double x, double v) const { return Bd ? Bd(t, x, v) : 0.0; }

  /// Spot-checks 1/lambda <= A <= lambda and |B| + |c| <= lambda on random
  /// samples in [0,T] x [0,X] x [-V,V]. Throws invalid_argument with the
  /// offending sample.
  void validate(double T, double X, double V, int samples = 1000,
                std::uint64_t seed = 1) const;
};

}  // namespace kfp
