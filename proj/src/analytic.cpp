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
#include "kfp/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "kfp/error.hpp"

namespace kfp::analytic {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTarget = 1e-12;
constexpr double kSeriesEdge = 30.0;
constexpr double kBandLo = 25.0;
constexpr double kBandHi = 35.0;
constexpr double kOverflowGuard = 700.0;

bool nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double rgamma(double x) {
  if (nonpositive_integer(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

struct Partial {
  double value = 0.0;
  double bound = 0.0;
};

// sum_k (a)_k / (b)_k z^k / k!
Partial power_series(double a, double b, double z) {
  double term = 1.0, sum = 1.0, abs_sum = 1.0;
  for (int k = 0; k < 20000; ++k) {
    term *= (a + k) / (b + k) * z / (k + 1);
    sum += term;
    abs_sum += std::abs(term);
    if (term == 0.0) break;
    if (k > std::abs(z) && std::abs(term) < 0.01 * kEps * std::abs(sum)) break;
  }
  return {sum, 4.0 * kEps * abs_sum + std::abs(term)};
}

// sum_k (p)_k (q)_k / k! w^k, truncated at the smallest term
Partial asymptotic_sum(double p, double q, double w) {
  double term = 1.0, sum = 1.0, abs_sum = 1.0, last = 1.0;
  for (int k = 0; k < 500; ++k) {
    double next = term * (p + k) * (q + k) / (k + 1) * w;
    if (next == 0.0) return {sum, 4.0 * kEps * abs_sum};
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    abs_sum += std::abs(term);
    last = std::abs(term);
    if (last < 0.01 * kEps * std::abs(sum)) break;
  }
  return {sum, last + 4.0 * kEps * abs_sum};
}

// Large positive argument: M = e^z A1 + A2, everything scaled by exp(shift).
// With shift = -z this yields e^{-z} M(a, b, z), which is how negative
// arguments are handled through Kummer's transformation.
Partial asymptotic_positive(double a, double b, double z, double shift) {
  const double gb = std::tgamma(b);
  Partial out;
  const double r1 = rgamma(a);
  if (r1 != 0.0) {
    auto s1 = asymptotic_sum(1.0 - a, b - a, 1.0 / z);
    double pre = gb * r1 * std::exp(z + shift + (a - b) * std::log(z));
    out.value += pre * s1.value;
    out.bound += std::abs(pre) * s1.bound;
  }
  const double r2 = rgamma(b - a);
  if (r2 != 0.0) {
    auto s2 = asymptotic_sum(a, a - b + 1.0, -1.0 / z);
    double pre = gb * r2 * std::cos(std::numbers::pi * a) *
                 std::exp(shift - a * std::log(z));
    out.value += pre * s2.value;
    out.bound += std::abs(pre) * s2.bound;
    // the recessive term is only determined up to its Stokes multiplier on
    // the real axis; count the imaginary part as error
    out.bound += std::abs(gb * r2 * std::sin(std::numbers::pi * a) *
                          std::exp(shift - a * std::log(z)) * s2.value);
  }
  return out;
}

Partial series_route(double a, double b, double tau) {
  if (tau >= 0.0 || nonpositive_integer(a)) return power_series(a, b, tau);
  auto s = power_series(b - a, b, -tau);
  double e = std::exp(tau);
  return {e * s.value, e * s.bound};
}

Partial asymptotic_route(double a, double b, double tau) {
  if (tau > 0.0) return asymptotic_positive(a, b, tau, 0.0);
  return asymptotic_positive(b - a, b, -tau, tau);
}

double relative(const Partial& p) {
  if (p.value == 0.0) return p.bound == 0.0 ? 0.0 : INFINITY;
  return p.bound / std::abs(p.value);
}

}  // namespace

KummerEval kummer_m_detail(double a, double b, double tau) {
  if (!std::isfinite(a) || !std::isfinite(b) || std::isnan(tau))
    throw Error(ErrorCode::invalid_argument, "Kummer parameters must be finite");
  if (nonpositive_integer(b)) {
    std::ostringstream os;
    os << "Kummer parameter b=" << b << " is a pole (nonpositive integer)";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  if (tau > kOverflowGuard) {
    std::ostringstream os;
    os << "Kummer argument " << tau << " exceeds the overflow guard " << kOverflowGuard;
    throw Error(ErrorCode::domain_error, os.str());
  }
  KummerEval out;
  if (tau == 0.0) {
    out.value = 1.0;
    return out;
  }

  const double z = std::abs(tau);
  Partial chosen;
  if (nonpositive_integer(a) || z < kBandLo) {
    chosen = series_route(a, b, tau);
  } else if (z > kBandHi) {
    chosen = asymptotic_route(a, b, tau);
    out.asymptotic = true;
    if (relative(chosen) > kTarget && z <= kOverflowGuard) {
      auto s = series_route(a, b, tau);
      if (relative(s) < relative(chosen)) {
        chosen = s;
        out.asymptotic = false;
      }
    }
  } else {
    auto s = series_route(a, b, tau);
    auto e = asymptotic_route(a, b, tau);
    out.band_discrepancy =
        std::abs(s.value - e.value) / std::max(std::abs(s.value), 1e-300);
    out.band_bound = relative(s) + relative(e) + 8.0 * kEps;
    bool prefer_series = z <= kSeriesEdge;
    if (prefer_series ? relative(e) < relative(s) && relative(s) > kTarget
                      : relative(s) < relative(e) && relative(e) > kTarget)
      prefer_series = !prefer_series;
    chosen = prefer_series ? s : e;
    out.asymptotic = !prefer_series;
  }
  out.value = chosen.value;
  out.error_bound = chosen.bound;
  if (relative(chosen) > kTarget && chosen.bound > 1e-300) {
    std::ostringstream os;
    os << "M(" << a << ", " << b << ", " << tau
       << ") accuracy unreachable: achieved relative bound " << relative(chosen);
    throw Error(ErrorCode::accuracy_unreachable, os.str());
  }
  return out;
}

double kummer_m(double a, double b, double tau) {
  return kummer_m_detail(a, b, tau).value;
}

// Tricomi U ------------------------------------------------------------------

namespace {

// Exp-sinh nodes y = exp(pi/2 sinh t) on [-4.5, 2.5], step 1/32, with the
// Jacobian y * pi/2 cosh t * h folded into the weight.
struct DeNodes {
  std::vector<double> y;
  std::vector<double> log_y;
  std::vector<double> w;
};

const DeNodes& de_nodes() {
  static const DeNodes nodes = [] {
    DeNodes n;
    const double h = 1.0 / 32.0;
    for (int k = -144; k <= 80; ++k) {
      double t = k * h;
      double ly = 0.5 * std::numbers::pi * std::sinh(t);
      n.y.push_back(std::exp(ly));
      n.log_y.push_back(ly);
      n.w.push_back(0.5 * std::numbers::pi * std::cosh(t) * h);
    }
    return n;
  }();
  return nodes;
}

// U(a, b, s) for several (a, b) at one s, sharing log1p(y/s).
class UEvaluator {
 public:
  explicit UEvaluator(double s) : s_(s), log_s_(std::log(s)) {
    if (!(s > 0.0)) throw Error(ErrorCode::domain_error, "Tricomi U needs s > 0");
    const auto& n = de_nodes();
    l_.resize(n.y.size());
    for (std::size_t j = 0; j < n.y.size(); ++j) l_[j] = std::log1p(n.y[j] / s);
  }

  double operator()(double a, double b) const {
    if (!(a > 0.0)) throw Error(ErrorCode::domain_error, "Tricomi U needs a > 0");
    const auto& n = de_nodes();
    double sum = 0.0;
    for (std::size_t j = 0; j < n.y.size(); ++j) {
      double e = -n.y[j] + a * n.log_y[j] + (b - a - 1.0) * l_[j];
      if (e > -745.0) sum += n.w[j] * std::exp(e);
    }
    return std::exp(-a * log_s_ - std::lgamma(a)) * sum;
  }

 private:
  double s_;
  double log_s_;
  std::vector<double> l_;
};

constexpr double kThird = 1.0 / 3.0;
constexpr double kSixth = 1.0 / 6.0;

double c1() {
  static const double v = std::tgamma(kThird) / std::tgamma(kSixth);
  return v;
}

double c2() {
  static const double v = std::tgamma(-kThird) / std::tgamma(-kSixth);
  return v;
}

}  // namespace

double tricomi_u(double a, double b, double s) { return UEvaluator(s)(a, b); }

double psi_at_zero() { return c1(); }

namespace {

// e^{-tau} times the jet of Psi for tau <= -1: Psi(tau) = e^tau G(-tau) with
// G(s) = U(5/6, 2/3, s)/6
PsiJet scaled_negative_jet(double tau) {
  UEvaluator u(-tau);
  const double g = u(5.0 / 6.0, 2.0 / 3.0) / 6.0;
  const double gp = -5.0 / 36.0 * u(11.0 / 6.0, 5.0 / 3.0);
  const double gpp = 55.0 / 216.0 * u(17.0 / 6.0, 8.0 / 3.0);
  return {g, g - gp, g - 2.0 * gp + gpp};
}

}  // namespace

PsiJet tricomi_psi_jet(double tau) {
  if (std::isnan(tau)) throw Error(ErrorCode::invalid_argument, "tau is NaN");
  PsiJet j;
  if (tau == 0.0) {
    j.value = c1();
    j.d1 = INFINITY;
    j.d2 = -INFINITY;
    return j;
  }
  if (std::abs(tau) < 1.0) {
    const double a1 = -kSixth, b1 = 2.0 / 3.0, a2 = kSixth, b2 = 4.0 / 3.0;
    double m1 = kummer_m(a1, b1, tau);
    double m1p = a1 / b1 * kummer_m(a1 + 1, b1 + 1, tau);
    double m1pp = a1 * (a1 + 1) / (b1 * (b1 + 1)) * kummer_m(a1 + 2, b1 + 2, tau);
    double m2 = kummer_m(a2, b2, tau);
    double m2p = a2 / b2 * kummer_m(a2 + 1, b2 + 1, tau);
    double m2pp = a2 * (a2 + 1) / (b2 * (b2 + 1)) * kummer_m(a2 + 2, b2 + 2, tau);
    double r = std::cbrt(tau);
    double r1 = kThird * r / tau;             // d/dtau tau^{1/3}
    double r2 = -2.0 / 3.0 * r1 / tau;        // second derivative
    j.value = c1() * m1 + c2() * r * m2;
    j.d1 = c1() * m1p + c2() * (r1 * m2 + r * m2p);
    j.d2 = c1() * m1pp + c2() * (r2 * m2 + 2.0 * r1 * m2p + r * m2pp);
    return j;
  }
  if (tau > 0.0) {
    UEvaluator u(tau);
    j.value = (1.0 + tau) * u(5.0 / 6.0, 2.0 / 3.0) - 35.0 / 36.0 * u(11.0 / 6.0, 2.0 / 3.0);
    j.d1 = u(5.0 / 6.0, 5.0 / 3.0) / 6.0;
    j.d2 = -5.0 / 36.0 * u(11.0 / 6.0, 8.0 / 3.0);
    return j;
  }
  j = scaled_negative_jet(tau);
  const double e = std::exp(tau);
  j.value *= e;
  j.d1 *= e;
  j.d2 *= e;
  return j;
}

double tricomi_psi(double tau) {
  if (std::isnan(tau)) throw Error(ErrorCode::invalid_argument, "tau is NaN");
  if (tau == 0.0) return c1();
  if (std::abs(tau) < 1.0)
    return c1() * kummer_m(-kSixth, 2.0 / 3.0, tau) +
           c2() * std::cbrt(tau) * kummer_m(kSixth, 4.0 / 3.0, tau);
  if (tau > 0.0) {
    UEvaluator u(tau);
    return (1.0 + tau) * u(5.0 / 6.0, 2.0 / 3.0) - 35.0 / 36.0 * u(11.0 / 6.0, 2.0 / 3.0);
  }
  return std::exp(tau) * UEvaluator(-tau)(5.0 / 6.0, 2.0 / 3.0) / 6.0;
}

// Steady solution -----------------------------------------------------------

SteadyValue steady_solution(double x, double v) {
  double scale = 0.0;
  SteadyValue out = steady_solution_scaled(x, v, &scale);
  if (scale != 0.0) {
    const double e = std::exp(scale);
    out.f *= e;
    out.fx *= e;
    out.fv *= e;
    out.fvv *= e;
  }
  return out;
}

SteadyValue steady_solution_scaled(double x, double v, double* log_scale) {
  *log_scale = 0.0;
  if (!(x > 0.0) || !std::isfinite(x) || !std::isfinite(v)) {
    std::ostringstream os;
    os << "steady solution needs x > 0, got x=" << x;
    throw Error(ErrorCode::domain_error, os.str());
  }
  SteadyValue out;
  const double x16 = std::pow(x, kSixth);
  const double tau = -v * v * v / (9.0 * x);
  if (std::abs(tau) < 1.0) {
    // regular form in w = v (9x)^{-1/3}: f = x^{1/6} h(w)
    const double s = std::cbrt(9.0 * x);
    const double w = v / s;
    const double w2 = w * w, w3 = w2 * w;
    const double a1 = -kSixth, b1 = 2.0 / 3.0, a2 = kSixth, b2 = 4.0 / 3.0;
    double m1 = kummer_m(a1, b1, tau);
    double m1p = a1 / b1 * kummer_m(a1 + 1, b1 + 1, tau);
    double m1pp = a1 * (a1 + 1) / (b1 * (b1 + 1)) * kummer_m(a1 + 2, b1 + 2, tau);
    double m2 = kummer_m(a2, b2, tau);
    double m2p = a2 / b2 * kummer_m(a2 + 1, b2 + 1, tau);
    double m2pp = a2 * (a2 + 1) / (b2 * (b2 + 1)) * kummer_m(a2 + 2, b2 + 2, tau);
    double h = c1() * m1 - c2() * w * m2;
    double hp = -3.0 * w2 * c1() * m1p - c2() * (m2 - 3.0 * w3 * m2p);
    double hpp = c1() * (-6.0 * w * m1p + 9.0 * w2 * w2 * m1pp) -
                 c2() * (-12.0 * w2 * m2p + 9.0 * w3 * w2 * m2pp);
    out.f = x16 * h;
    out.fv = x16 * hp / s;
    out.fvv = x16 * hpp / (s * s);
    out.fx = x16 / x * (h / 6.0 - w * hp / 3.0);
    return out;
  }
  PsiJet j;
  if (tau <= -1.0) {
    j = scaled_negative_jet(tau);
    *log_scale = tau;
  } else {
    j = tricomi_psi_jet(tau);
  }
  const double tv = -v * v / (3.0 * x);
  const double tvv = -2.0 * v / (3.0 * x);
  out.f = x16 * j.value;
  out.fx = x16 / x * (j.value / 6.0 - tau * j.d1);
  out.fv = x16 * j.d1 * tv;
  out.fvv = x16 * (j.d2 * tv * tv + j.d1 * tvv);
  return out;
}

// Manufactured solutions ----------------------------------------------------

namespace {

using Fn = Manufactured::Fn;

Manufactured finish(Manufactured m) {
  const auto k = m.coeffs;
  auto ft = m.ft, fx = m.fx, fv = m.fv, fvv = m.fvv, f = m.f, av = m.a_v;
  m.coeffs.s = [=](double t, double x, double v) {
    return ft(t, x, v) + v * fx(t, x, v) -
           (av(t, x, v) * fv(t, x, v) + k.a(t, x, v) * fvv(t, x, v)) -
           k.b(t, x, v) * fv(t, x, v) - k.zeroth(t, x, v) * f(t, x, v);
  };
  m.coeffs.time_dependent = false;
  return m;
}

Fn zero() {
  return [](double, double, double) { return 0.0; };
}

}  // namespace

std::vector<std::string> manufactured_ids() {
  return {"constant", "linear_tv", "sin_gauss", "variable"};
}

Manufactured manufactured_solution(const std::string& id) {
  using std::numbers::pi;
  Manufactured m;
  m.id = id;
  m.a_v = zero();
  if (id == "constant") {
    m.f = [](double, double, double) { return 1.0; };
    m.ft = m.fx = m.fv = m.fvv = zero();
    m.coeffs = CoefficientField::constant(1.0, 0.0, 0.0, 0.0);
  } else if (id == "linear_tv") {
    m.f = [](double t, double, double v) { return t * v; };
    m.ft = [](double, double, double v) { return v; };
    m.fv = [](double t, double, double) { return t; };
    m.fx = m.fvv = zero();
    m.coeffs = CoefficientField::constant(1.0, 0.0, 0.0, 0.0);
  } else if (id == "sin_gauss") {
    // e^{-t} sin(pi x) e^{-v^2}
    m.f = [](double t, double x, double v) {
      return std::exp(-t - v * v) * std::sin(pi * x);
    };
    m.ft = [](double t, double x, double v) {
      return -std::exp(-t - v * v) * std::sin(pi * x);
    };
    m.fx = [](double t, double x, double v) {
      return pi * std::exp(-t - v * v) * std::cos(pi * x);
    };
    m.fv = [](double t, double x, double v) {
      return -2.0 * v * std::exp(-t - v * v) * std::sin(pi * x);
    };
    m.fvv = [](double t, double x, double v) {
      return (4.0 * v * v - 2.0) * std::exp(-t - v * v) * std::sin(pi * x);
    };
    m.coeffs = CoefficientField::constant(1.0, 0.0, 0.0, 0.0);
  } else if (id == "variable") {
    // e^{-t/2} (1 + x/2) e^{-v^2/2} with A = 1 + sin(pi x)/4 + v^2/(4(1+v^2)),
    // B = 0.3 cos(x), c = -0.5
    auto g = [](double t, double x, double v) {
      return std::exp(-0.5 * t - 0.5 * v * v) * (1.0 + 0.5 * x);
    };
    m.f = g;
    m.ft = [g](double t, double x, double v) { return -0.5 * g(t, x, v); };
    m.fx = [](double t, double, double v) { return 0.5 * std::exp(-0.5 * t - 0.5 * v * v); };
    m.fv = [g](double t, double x, double v) { return -v * g(t, x, v); };
    m.fvv = [g](double t, double x, double v) { return (v * v - 1.0) * g(t, x, v); };
    m.coeffs.A = [](double, double x, double v) {
      return 1.0 + 0.25 * std::sin(pi * x) + 0.25 * v * v / (1.0 + v * v);
    };
    m.a_v = [](double, double, double v) {
      double d = 1.0 + v * v;
      return 0.5 * v / (d * d);
    };
    m.coeffs.B = [](double, double x, double) { return 0.3 * std::cos(x); };
    m.coeffs.c = [](double, double, double) { return -0.5; };
    m.coeffs.lambda = 2.0;
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown manufactured solution '" + id + "'");
  }
  return finish(m);
}

}  // namespace kfp::analytic
