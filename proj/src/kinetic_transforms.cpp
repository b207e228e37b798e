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
#include "kfp/kinetic_transforms.hpp"

#include <cmath>

#include "kfp/error.hpp"

namespace kfp {

namespace {

double norm(const std::vector<double>& a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

void require_same_dimension(const PhasePoint& a, const PhasePoint& b) {
  if (a.x.size() != b.x.size() || a.v.size() != b.v.size() ||
      a.x.size() != a.v.size())
    throw Error(ErrorCode::invalid_argument, "phase point dimension mismatch");
}

}  // namespace

PhasePoint scale_map(const PhasePoint& z0, double r, const PhasePoint& z) {
  if (!(r > 0.0)) throw Error(ErrorCode::invalid_argument, "scale must be positive");
  require_same_dimension(z0, z);
  const double r2 = r * r, r3 = r2 * r;
  PhasePoint out;
  out.t = z0.t + r2 * z.t;
  out.x.resize(z.x.size());
  out.v.resize(z.v.size());
  for (std::size_t i = 0; i < z.x.size(); ++i) {
    out.x[i] = z0.x[i] + r3 * z.x[i] + r2 * z.t * z0.v[i];
    out.v[i] = z0.v[i] + r * z.v[i];
  }
  return out;
}

bool KineticCylinder::contains(const PhasePoint& z) const {
  require_same_dimension(center, z);
  const double dt = z.t - center.t;
  if (!(dt <= 0.0 && dt > -r * r)) return false;
  std::vector<double> dx(z.x.size()), dv(z.v.size());
  for (std::size_t i = 0; i < z.x.size(); ++i) {
    dx[i] = z.x[i] - center.x[i] - dt * center.v[i];
    dv[i] = z.v[i] - center.v[i];
  }
  return norm(dx) < r * r * r && norm(dv) < r;
}

double WeightSpec::operator()(double v) const {
  return std::pow(1.0 + v * v, 0.5 * q);
}

double WeightSpec::operator()(const std::vector<double>& v) const {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::pow(1.0 + s, 0.5 * q);
}

CoefficientField weighted_coefficients(const CoefficientField& k, double q) {
  if (!(q >= 0.0)) throw Error(ErrorCode::invalid_argument, "weight exponent must be >= 0");
  if (q == 0.0) return k;
  CoefficientField w = k;
  const auto base = k;
  w.Bd = [base, q](double t, double x, double v) {
    return base.bdiv(t, x, v) - q * base.a(t, x, v) * v / (1.0 + v * v);
  };
  w.B = [base, q](double t, double x, double v) {
    return base.b(t, x, v) - q * base.a(t, x, v) * v / (1.0 + v * v);
  };
  w.c = [base, q](double t, double x, double v) {
    const double br = 1.0 + v * v;
    const double a = base.a(t, x, v);
    return base.zeroth(t, x, v) + q * q * a * v * v / (br * br) -
           q * (base.b(t, x, v) + base.bdiv(t, x, v)) * v / br;
  };
  w.s = [base, q](double t, double x, double v) {
    return std::pow(1.0 + v * v, 0.5 * q) * base.source(t, x, v);
  };
  // |Bd| <= q Lambda / 2 and |c' - c| <= q^2 Lambda / 4 + q Lambda / 2
  w.lambda = k.lambda + q * k.lambda + q * q * k.lambda / 4.0;
  return w;
}

}  // namespace kfp
