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

#include <functional>
#include <string>
#include <vector>

#include "kfp/coefficients.hpp"

namespace kfp::analytic {

/// Kummer's confluent hypergeometric function M(a, b, tau), relative accuracy
/// 1e-12. Power series for |tau| <= 30 (Kummer-transformed for tau < 0) and
/// the large-argument expansion beyond, with both compared on 25 <= |tau| <= 35.
double kummer_m(double a, double b, double tau);

struct KummerEval {
  double value = 0.0;
  double error_bound = 0.0;  // absolute
  bool asymptotic = false;
  /// Relative disagreement of series and expansion inside the overlap band,
  /// negative when only one method ran.
  double band_discrepancy = -1.0;
  /// Sum of the two methods' relative error bounds inside the band.
  double band_bound = -1.0;
};
KummerEval kummer_m_detail(double a, double b, double tau);

/// Tricomi's U(a, b, s) for a > 0, s > 0 from its Laplace integral.
double tricomi_u(double a, double b, double s);

/// Psi(tau) = G(1/3)/G(1/6) M(-1/6, 2/3, tau) + G(-1/3)/G(-1/6) tau^{1/3} M(1/6, 4/3, tau)
/// with the real cube root for tau < 0.
double tricomi_psi(double tau);

struct PsiJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};
PsiJet tricomi_psi_jet(double tau);

/// Psi(0) = G(1/3)/G(1/6).
double psi_at_zero();

struct SteadyValue {
  double f = 0.0;
  double fx = 0.0;
  double fv = 0.0;
  double fvv = 0.0;
};

/// f(x, v) = x^{1/6} Psi(-v^3/(9x)), the steady solution of v f_x = f_vv on
/// x > 0 that vanishes on {x = 0, v > 0}.
SteadyValue steady_solution(double x, double v);

/// Same jet divided by e^{log_scale}. Far on the decaying side the values
/// underflow in double precision; the scaled jet keeps full relative accuracy.
SteadyValue steady_solution_scaled(double x, double v, double* log_scale);

/// A smooth exact solution of the kinetic equation with its coefficients and
/// the matching source term.
struct Manufactured {
  using Fn = std::function<double(double t, double x, double v)>;
  std::string id;
  Fn f;
  Fn ft;
  Fn fx;
  Fn fv;
  Fn fvv;
  CoefficientField coeffs;  // source filled in
  Fn a_v;                   // dA/dv used to form the source
};

std::vector<std::string> manufactured_ids();
Manufactured manufactured_solution(const std::string& id);

}  // namespace kfp::analytic
