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
#include "kfp/coefficients.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "kfp/error.hpp"

namespace kfp {

CoefficientField CoefficientField::constant(double A, double B, double c,
                                            double s, double lambda) {
  CoefficientField k;
  k.A = [A](double, double, double) { return A; };
  k.B = [B](double, double, double) { return B; };
  k.c = [c](double, double, double) { return c; };
  if (s != 0.0) k.s = [s](double, double, double) { return s; };
  k.lambda = lambda;
  return k;
}

void CoefficientField::validate(double T, double X, double V, int samples,
                                std::uint64_t seed) const {
  if (!A) throw Error(ErrorCode::invalid_argument, "diffusion coefficient A missing");
  if (!(lambda > 1.0))
    throw Error(ErrorCode::invalid_argument, "ellipticity constant must exceed 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < samples; ++k) {
    double t = T * u(rng), x = X * u(rng), v = V * (2.0 * u(rng) - 1.0);
    double a = A(t, x, v);
    double lower = std::abs(b(t, x, v)) + std::abs(zeroth(t, x, v));
    if (!(a >= 1.0 / lambda && a <= lambda) || !(lower <= lambda)) {
      std::ostringstream os;
      os << "coefficients violate ellipticity bound " << lambda << " at (t,x,v)=("
         << t << ", " << x << ", " << v << "): A=" << a << ", |B|+|c|=" << lower;
      throw Error(ErrorCode::invalid_argument, os.str());
    }
  }
}

}  // namespace kfp
