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
#include <cmath>
#include <random>

#include "doctest.h"
#include "kfp/analytic.hpp"
#include "kfp/error.hpp"
#include "kfp/reference.hpp"

using namespace kfp;
using namespace kfp::analytic;

namespace {

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::abs(b);
}

}  // namespace

TEST_CASE("kummer_m at zero and known values") {
  for (double a : {-2.5, -1.0 / 6, 0.3, 4.0})
    for (double b : {-1.5, 2.0 / 3, 7.0}) CHECK(kummer_m(a, b, 0.0) == 1.0);

  // high-precision values
  CHECK(close(kummer_m(-1.0 / 6, 2.0 / 3, -1.0), 1.19945319671111897360, 1e-14));
  CHECK(close(kummer_m(0.5, 1.5, 40.0), 2980568725898932.8174, 1e-12));
  CHECK(close(kummer_m(0.5, 1.5, -40.0), 0.14012478040994821743, 1e-12));
  CHECK(close(kummer_m(2.5, 0.5, 100.0), 3.6919496864750076294e47, 1e-12));
  CHECK(close(kummer_m(-2.5, 3.5, -300.0), 44988.430090408859998, 1e-12));
  // polynomial case a = -2: 1 + (-2/b) z + ...
  CHECK(close(kummer_m(-2.0, 1.0, 50.0), 1.0 - 100.0 + 2500.0 / 2.0, 1e-13));
}

TEST_CASE("kummer_m large negative argument power law") {
  double ratio = kummer_m(-1.0 / 6, 2.0 / 3, -1e4) /
                 (std::tgamma(2.0 / 3) / std::tgamma(5.0 / 6) * std::pow(1e4, 1.0 / 6));
  CHECK(std::abs(ratio - 1.0) < 1e-3);
  CHECK(close(ratio, 0.999997222087173, 1e-10));
}

TEST_CASE("kummer_m errors") {
  CHECK_THROWS_AS(kummer_m(0.5, -2.0, 1.0), Error);
  CHECK_THROWS_AS(kummer_m(0.5, 0.0, 1.0), Error);
  try {
    kummer_m(0.5, 1.5, 701.0);
    FAIL("expected guard");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain_error);
  }
}

TEST_CASE("series and asymptotic agree in the overlap band") {
  for (auto [a, b] : {std::pair{-1.0 / 6, 2.0 / 3}, std::pair{1.0 / 6, 4.0 / 3},
                      std::pair{5.0 / 6, 5.0 / 3}}) {
    for (double z = 25.0; z <= 35.0; z += 0.5) {
      for (double s : {1.0, -1.0}) {
        auto d = kummer_m_detail(a, b, s * z);
        CHECK(d.band_discrepancy >= 0.0);
        CHECK(d.band_discrepancy <= d.band_bound);
        if (z >= 30.0) CHECK(d.band_discrepancy < 1e-11);
        CHECK(d.error_bound <= 1e-12 * std::abs(d.value));
      }
    }
  }
}

TEST_CASE("kummer_m matches the multiprecision oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (int k = 0; k < 60; ++k) {
    double t = u(rng);
    CHECK(close(kummer_m(-1.0 / 6, 2.0 / 3, t), reference::kummer_m(-1.0 / 6, 2.0 / 3, t), 1e-12));
    CHECK(close(kummer_m(1.0 / 6, 4.0 / 3, t), reference::kummer_m(1.0 / 6, 4.0 / 3, t), 1e-12));
  }
}

TEST_CASE("reference oracle against independent values") {
  CHECK(close(reference::kummer_m(-1.0 / 6, 2.0 / 3, -1.0), 1.19945319671111897360, 1e-15));
  CHECK(close(reference::tricomi_psi(-30.0), 8.8848385549301667298e-16, 1e-14));
  CHECK(close(reference::tricomi_psi(30.0), 1.7643411858486690526, 1e-15));
  CHECK_THROWS_AS(reference::kummer_m(0.1, 0.2, 100.0), Error);
}

TEST_CASE("tricomi U from quadrature") {
  // U(1, 1, s) = e^s E1(s); U(a, a+1, s) = s^{-a}
  CHECK(close(tricomi_u(1.0, 1.0, 1.0), 0.59634736232319407434, 1e-13));
  CHECK(close(tricomi_u(5.0 / 6, 11.0 / 6, 3.0), std::pow(3.0, -5.0 / 6), 1e-13));
  CHECK(close(tricomi_u(2.5, 3.5, 40.0), std::pow(40.0, -2.5), 1e-13));
  CHECK_THROWS_AS(tricomi_u(-0.5, 1.0, 2.0), Error);
  CHECK_THROWS_AS(tricomi_u(0.5, 1.0, -2.0), Error);
}

TEST_CASE("Psi values") {
  CHECK(close(tricomi_psi(0.0), 0.48127676076079076379, 1e-15));
  CHECK(psi_at_zero() == tricomi_psi(0.0));
  const std::pair<double, double> table[] = {
      {1.0, 1.0208671373347342397},     {-1.0, 0.037111299210418893226},
      {5.0, 1.3143526735904059708},     {-5.0, 0.00025138457965655152979},
      {30.0, 1.7643411858486690526},    {-30.0, 8.8848385549301667298e-16},
      {100.0, 2.1550302726424895012},   {-100.0, 1.3230405800677500285e-46},
      {1000.0, 3.1623654585703988122},
  };
  for (auto [t, want] : table) {
    INFO("tau = " << t);
    CHECK(close(tricomi_psi(t), want, 1e-12));
  }
}

TEST_CASE("Psi is continuous across the evaluation switch") {
  for (double s : {1.0, -1.0}) {
    double in = tricomi_psi(s * (1.0 - 1e-12)), out = tricomi_psi(s * 1.0);
    CHECK(close(in, out, 1e-11));
    auto ji = tricomi_psi_jet(s * (1.0 - 1e-12)), jo = tricomi_psi_jet(s);
    CHECK(close(ji.d1, jo.d1, 1e-10));
    CHECK(close(ji.d2, jo.d2, 1e-10));
  }
}

TEST_CASE("Psi asymptotics") {
  CHECK(std::abs(tricomi_psi(1e3) / std::pow(1e3, 1.0 / 6) - 1.0) < 1e-2);
  for (double t : {-1e2, -1e3, -1e4}) {
    double s = tricomi_psi(t) * std::pow(-t, 5.0 / 6);
    CHECK(std::isfinite(s));
    CHECK(s >= 0.0);
    CHECK(s < 1.0);
  }
}

TEST_CASE("Psi solves its Kummer equation") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int k = 0; k < 100; ++k) {
    double t = u(rng);
    auto j = tricomi_psi_jet(t);
    double terms[] = {t * j.d2, (2.0 / 3 - t) * j.d1, j.value / 6};
    double scale = std::abs(terms[0]) + std::abs(terms[1]) + std::abs(terms[2]);
    INFO("tau = " << t);
    CHECK(std::abs(terms[0] + terms[1] + terms[2]) <= 1e-8 * scale);
  }
}

TEST_CASE("Psi derivatives agree with sixth-order differences") {
  for (double t : {-20.0, -7.5, -2.0, 1.5, 4.0, 12.0, 45.0}) {
    const double h = 1e-2 * std::max(1.0, std::abs(t) / 10);
    double fm3 = tricomi_psi(t - 3 * h), fm2 = tricomi_psi(t - 2 * h), fm1 = tricomi_psi(t - h);
    double fp1 = tricomi_psi(t + h), fp2 = tricomi_psi(t + 2 * h), fp3 = tricomi_psi(t + 3 * h);
    double d1 = (-fm3 + 9 * fm2 - 45 * fm1 + 45 * fp1 - 9 * fp2 + fp3) / (60 * h);
    auto j = tricomi_psi_jet(t);
    INFO("tau = " << t);
    CHECK(close(d1, j.d1, 1e-7));
  }
}

TEST_CASE("gamma ratio cancellation identities") {
  CHECK(close(std::tgamma(1.0 / 3) * std::tgamma(2.0 / 3),
              -std::tgamma(-1.0 / 3) * std::tgamma(4.0 / 3), 1e-12));
  CHECK(close(std::tgamma(1.0 / 6) * std::tgamma(5.0 / 6),
              -std::tgamma(-1.0 / 6) * std::tgamma(7.0 / 6), 1e-12));
}

TEST_CASE("steady solution special cases") {
  CHECK_THROWS_AS(steady_solution(0.0, 1.0), Error);
  CHECK_THROWS_AS(steady_solution(-1.0, 1.0), Error);
  for (double x : {1e-6, 1e-3, 0.5, 4.0})
    CHECK(close(steady_solution(x, 0.0).f, std::pow(x, 1.0 / 6) * psi_at_zero(), 1e-14));
  CHECK(close(steady_solution(1e-10, -1.0).f, std::pow(3.0, -1.0 / 3), 1e-6));
  double small = steady_solution(1e-3, 1.0).f;
  CHECK(small >= 0.0);
  CHECK(small < 1e-3);
}

TEST_CASE("steady solution derivatives agree with differences") {
  for (double x : {0.05, 0.3, 2.0})
    for (double v : {-2.0, -0.4, -0.1, 0.0, 0.2, 0.7, 1.9}) {
      auto s = steady_solution(x, v);
      const double h = 1e-4;
      double fx = (steady_solution(x + h, v).f - steady_solution(x - h, v).f) / (2 * h);
      double fv = (steady_solution(x, v + h).f - steady_solution(x, v - h).f) / (2 * h);
      double fvv = (steady_solution(x, v + h).f - 2 * s.f + steady_solution(x, v - h).f) / (h * h);
      INFO("x=" << x << " v=" << v);
      CHECK(std::abs(fx - s.fx) < 1e-6 * (1 + std::abs(s.fx)));
      CHECK(std::abs(fv - s.fv) < 1e-6 * (1 + std::abs(s.fv)));
      CHECK(std::abs(fvv - s.fvv) < 1e-5 * (1 + std::abs(s.fvv)));
    }
}

TEST_CASE("steady PDE residual on a grid") {
  double worst = 0.0;
  for (int i = 0; i < 60; ++i)
    for (int j = 0; j < 61; ++j) {
      double x = 0.01 * std::pow(1000.0, i / 59.0);
      double v = -5.0 + 10.0 * j / 60.0;
      auto s = steady_solution(x, v);
      worst = std::max(worst, std::abs(v * s.fx - s.fvv) / (1.0 + std::abs(s.f)));
    }
  CHECK(worst < 1e-6);
}

TEST_CASE("manufactured registry") {
  auto c = manufactured_solution("constant");
  CHECK(c.coeffs.source(0.3, 0.2, 1.0) == 0.0);
  auto tv = manufactured_solution("linear_tv");
  CHECK(tv.coeffs.source(0.7, 0.2, 1.5) == doctest::Approx(1.5));
  auto sg = manufactured_solution("sin_gauss");
  const double pi = 3.14159265358979323846;
  double t = 0.4, x = 0.3, v = 0.8;
  double want = std::exp(-t - v * v) * (-std::sin(pi * x) + v * pi * std::cos(pi * x) -
                                        (4 * v * v - 2) * std::sin(pi * x));
  CHECK(sg.coeffs.source(t, x, v) == doctest::Approx(want).epsilon(1e-13));
  for (const auto& id : manufactured_ids()) {
    auto m = manufactured_solution(id);
    CHECK_NOTHROW(m.coeffs.validate(1.0, 1.0, 6.0));
  }
  CHECK_THROWS_AS(manufactured_solution("nope"), Error);
}

TEST_CASE("scaled steady jet avoids underflow") {
  for (auto [x, v] : {std::pair{0.5, 1.2}, std::pair{0.05, 2.0}, std::pair{1.0, -0.3}}) {
    double scale = 0.0;
    auto s = steady_solution_scaled(x, v, &scale);
    auto f = steady_solution(x, v);
    CHECK(s.f * std::exp(scale) == doctest::Approx(f.f).epsilon(1e-14));
    CHECK(s.fvv * std::exp(scale) == doctest::Approx(f.fvv).epsilon(1e-14));
  }
  // f is about e^{-1000} here, far below the smallest double
  double scale = 0.0;
  auto s = steady_solution_scaled(0.01, 4.5, &scale);
  CHECK(scale < -1000.0);
  CHECK(s.f > 0.0);
  CHECK(std::abs(4.5 * s.fx - s.fvv) <= 1e-10 * std::abs(s.fvv));
  CHECK(steady_solution(0.01, 4.5).f == 0.0);
}
