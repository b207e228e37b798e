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
#include "kfp/boundary.hpp"
#include "kfp/error.hpp"

using namespace kfp;
using namespace kfp::boundary;

namespace {

const Wall kLeft{0.0, -1.0, 0};
const Wall kRight{1.0, 1.0, 1};

std::vector<double> vec(std::initializer_list<double> l) { return l; }

template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("classify") {
  auto e1 = vec({1, 0}), e2 = vec({0, 1}), m1 = vec({-1, 0});
  CHECK(classify(e1, e1).tag == Flow::outgoing);
  CHECK(classify(e1, m1).tag == Flow::incoming);
  CHECK(classify(e1, e2).tag == Flow::grazing);
  CHECK(classify(e1, vec({1e-3, 1}), 1e-2).tag == Flow::grazing);
  CHECK(classify(e1, m1).normal_speed == -1.0);
}

TEST_CASE("specular reflection") {
  auto n = vec({0, 1});
  CHECK(specular(n, vec({1, -3})) == vec({1, 3}));
  CHECK(specular(n, vec({2, 0})) == vec({2, 0}));

  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> nn{g(rng), g(rng)};
    double l = std::hypot(nn[0], nn[1]);
    nn[0] /= l;
    nn[1] /= l;
    std::vector<double> v{g(rng), g(rng)};
    auto r = specular(nn, v);
    CHECK(std::abs(std::hypot(r[0], r[1]) - std::hypot(v[0], v[1])) < 1e-12);
    auto rr = specular(nn, r);
    CHECK(std::abs(rr[0] - v[0]) < 1e-12);
    auto cv = classify(nn, v), cr = classify(nn, r);
    CHECK(std::abs(std::abs(cv.normal_speed) - std::abs(cr.normal_speed)) < 1e-12);
    if (cv.tag == Flow::outgoing) CHECK(cr.tag == Flow::incoming);
  }
}

TEST_CASE("boundary Maxwellian has unit incoming flux") {
  CHECK_THROWS_AS(boundary_maxwellian(0.0, 1), Error);
  CHECK_THROWS_AS(boundary_maxwellian(-1.0, 2), Error);
  auto m = boundary_maxwellian(1.0, 1);
  CHECK(m(0.7) == doctest::Approx(std::exp(-0.245)));
  for (double theta : {1.0, 4.0, 0.3}) {
    auto mx = boundary_maxwellian(theta, 1);
    double V = 12.0 * std::sqrt(theta);
    double flux = simpson([&](double w) { return w * mx(-w); }, 0.0, V, 2000);
    CHECK(std::abs(flux - 1.0) < 1e-10);
  }
  // d = 2, normal e1: incoming half-space v1 < 0 of the box [-10, 10]^2
  auto m2 = boundary_maxwellian(1.0, 2);
  double flux = simpson(
      [&](double w) {
        return simpson([&](double u) {
          double v[2] = {-w, u};
          return w * m2(v);
        }, -10.0, 10.0, 800);
      },
      0.0, 10.0, 800);
  CHECK(std::abs(flux - 1.0) < 1e-8);
}

TEST_CASE("macroscopic flux") {
  auto grid = VelocityGrid::uniform(10.0, 2000);
  std::vector<double> zero(grid.size(), 0.0), gauss(grid.size()), ind(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    gauss[j] = std::exp(-grid.v[j] * grid.v[j] / 2);
    ind[j] = grid.v[j] < 0 ? 1.0 : 0.0;
  }
  CHECK(macroscopic_flux(zero, grid, kRight) == 0.0);
  CHECK(std::abs(macroscopic_flux(gauss, grid, kRight) - 1.0) < 1e-4);
  CHECK(macroscopic_flux(ind, grid, kRight) == 0.0);

  std::vector<double> holes = gauss;
  holes[grid.size() - 3] = NAN;
  try {
    macroscopic_flux(holes, grid, kRight);
    FAIL("expected missing trace");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::missing_trace);
    CHECK(std::string(e.what()).find("right wall") != std::string::npos);
  }
  CHECK_THROWS_AS(macroscopic_flux(std::vector<double>{}, grid, kLeft), Error);
}

TEST_CASE("apply_boundary dispatch") {
  auto grid = VelocityGrid::uniform(4.0, 4);  // nodes -4 -2 0 2 4
  std::vector<double> out(grid.size(), 0.0);
  out[1] = 5.0;  // v = -2 is outgoing on the left wall

  auto absorbing = apply_boundary(Inflow{}, out, grid, kLeft, 0.0);
  for (double x : absorbing) CHECK(x == 0.0);

  auto sp = apply_boundary(Specular{}, out, grid, kLeft, 0.0);
  CHECK(sp[3] == 5.0);
  CHECK(sp[1] == 0.0);
  CHECK(sp[2] == 0.0);

  auto damped = apply_boundary(DampedSpecular{0.4}, out, grid, kLeft, 0.0);
  CHECK(damped[3] == doctest::Approx(2.0));

  Inflow g{[](double t, double x, double v) { return t + x + v; }};
  auto in = apply_boundary(g, out, grid, kRight, 0.5);
  CHECK(in[0] == doctest::Approx(0.5 + 1.0 - 4.0));
  CHECK(in[1] == doctest::Approx(0.5 + 1.0 - 2.0));
  CHECK(in[3] == 0.0);

  Inflow bad{[](double, double, double v) { return v > -3 ? 1.0 : NAN; }};
  CHECK_THROWS_AS(apply_boundary(bad, out, grid, kRight, 0.0), Error);
}

TEST_CASE("diffuse reflection balances flux") {
  auto grid = VelocityGrid::uniform(8.0, 160);
  auto mx = boundary_maxwellian(1.0, 1);
  Diffuse d{[mx](double, double, double v) { return mx(v); }, true};
  for (const Wall& w : {kLeft, kRight}) {
    std::vector<double> out(grid.size());
    for (int j = 0; j < grid.size(); ++j) out[j] = 0.8 * mx(grid.v[j]) + 0.1 * std::abs(grid.v[j]);
    auto in = apply_boundary(d, out, grid, w, 0.0);
    double fin = 0.0;
    for (int j = 0; j < grid.size(); ++j)
      if (w.flow(grid.v[j]) == Flow::incoming) fin += grid.w[j] * std::abs(grid.v[j]) * in[j];
    CHECK(fin == doctest::Approx(macroscopic_flux(out, grid, w)).epsilon(1e-13));
  }
  // without the discrete normalisation the balance holds to quadrature error
  Diffuse raw{d.weight, false};
  std::vector<double> out(grid.size());
  for (int j = 0; j < grid.size(); ++j) out[j] = mx(grid.v[j]);
  auto in = apply_boundary(raw, out, grid, kRight, 0.0);
  double fin = 0.0;
  for (int j = 0; j < grid.size(); ++j)
    if (grid.v[j] < 0) fin += grid.w[j] * std::abs(grid.v[j]) * in[j];
  CHECK(std::abs(fin - macroscopic_flux(out, grid, kRight)) < 1e-3);
}

TEST_CASE("reflecting operators are linear") {
  auto grid = VelocityGrid::uniform(3.0, 30);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> f(grid.size()), g(grid.size()), h(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    f[j] = u(rng);
    g[j] = u(rng);
    h[j] = 2.0 * f[j] - 3.0 * g[j];
  }
  auto mx = boundary_maxwellian(1.0, 1);
  BoundarySpec specs[] = {Specular{}, DampedSpecular{0.7},
                          Diffuse{[mx](double, double, double v) { return mx(v); }, true}};
  for (const auto& s : specs) {
    auto a = apply_boundary(s, f, grid, kRight, 0.0), b = apply_boundary(s, g, grid, kRight, 0.0),
         c = apply_boundary(s, h, grid, kRight, 0.0);
    for (int j = 0; j < grid.size(); ++j) CHECK(c[j] == doctest::Approx(2 * a[j] - 3 * b[j]));
  }
}

TEST_CASE("boundary measure vanishes on the grazing node") {
  auto grid = VelocityGrid::uniform(3.0, 6);
  auto mu = boundary_measure(grid, kLeft);
  CHECK(mu[3] == 0.0);
  for (int j = 0; j < grid.size(); ++j) CHECK(mu[j] >= 0.0);
  CHECK(mu[0] == doctest::Approx(3.0 * 0.5));
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(validate(DampedSpecular{1.5}), Error);
  CHECK_THROWS_AS(validate(DampedSpecular{-0.1}), Error);
  CHECK_NOTHROW(validate(DampedSpecular{1.0}));
  CHECK_THROWS_AS(validate(Diffuse{}), Error);
  CHECK(spec_name(Specular{}) == "specular");
  CHECK(is_reflecting(Diffuse{}));
  CHECK_FALSE(is_reflecting(Inflow{}));
}

TEST_CASE("velocity grid symmetry") {
  auto g = VelocityGrid::uniform(6.0, 10);
  for (int j = 0; j < g.size(); ++j) CHECK(g.v[j] == -g.v[g.mirror(j)]);
  CHECK(g.v[5] == 0.0);
  CHECK_THROWS_AS(VelocityGrid::uniform(6.0, 7), Error);
}
